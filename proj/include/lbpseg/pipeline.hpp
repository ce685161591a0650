#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lbpseg/features.hpp"
#include "lbpseg/metrics.hpp"
#include "lbpseg/raster.hpp"

namespace lbpseg {

struct PipelineConfig {
    double sigma = 8.0; // Gaussian width for the flatness map, in pixels
    FeatureVariant variant = FeatureVariant::Ab;
    std::uint64_t seed = 0;
    int restarts = 5;
    int max_iter = 100;
    double tol = 1e-4;
    bool postprocess = true;

    void validate() const;
};

// Full segmentation chain: luminance -> LBP map -> flatness map -> Gaussian
// smoothing -> feature space -> 2-cluster k-means -> lesion pick ->
// principal component -> hole filling. Deterministic for a fixed config.
// Structureless inputs surface as DegenerateVariance/DegenerateData errors.
BinaryMask segment_image(const RasterImage& img, const PipelineConfig& cfg);

// Intermediate products, for diagnostics and the lbp-stats command.
struct PipelineTrace {
    ScalarMap luminance;
    ScalarMap l_smooth;
    std::array<Vec2, 2> centroids;
    double sse = 0.0;
    int iterations = 0;
};

BinaryMask segment_image(const RasterImage& img, const PipelineConfig& cfg, PipelineTrace* trace);

struct DatasetRecord {
    std::string image_id;
    std::string image_path;
    std::string mask_path;
    std::string lesion_class; // CN, AN or M
};

// CSV with header image_id,image_path,mask_path,class; paths are resolved
// relative to the manifest location. Malformed rows, unknown class labels
// and missing files are reported with their row number.
std::vector<DatasetRecord> load_manifest(const std::string& path);

// Drops records whose id appears in the exclusion file (one id per line).
// Ids not present in the records are collected as warnings, not errors.
std::vector<DatasetRecord> apply_exclusions(const std::vector<DatasetRecord>& records,
                                            const std::string& exclusion_path,
                                            std::vector<std::string>* warnings = nullptr);

struct FailedImage {
    std::string image_id;
    std::string lesion_class;
    std::string reason;
};

struct EvaluationResult {
    std::vector<MetricsRecord> records;  // sorted by image_id
    std::vector<FailedImage> failures;   // sorted by image_id
};

// Runs the pipeline plus metrics on every record, optionally across threads;
// failures are collected instead of aborting the run. `masks_dir`, when
// non-empty, receives one <image_id>.png mask per image. The result is
// independent of `jobs`.
EvaluationResult evaluate_dataset(const std::vector<DatasetRecord>& records, const PipelineConfig& cfg,
                                  int jobs = 1, const std::string& masks_dir = "");

// Per-image rows followed by mean/stddev/cv summary rows for the whole run
// and per class. Failed images appear with empty metric cells.
void write_report_csv(const std::string& path, const EvaluationResult& result);

// Copy of the input with a 1-px red contour along the mask boundary.
RasterImage overlay_contour(const RasterImage& img, const BinaryMask& mask);

// Mean wall-clock seconds per segment_image call.
double bench_pipeline(const RasterImage& img, const PipelineConfig& cfg, int iters);

} // namespace lbpseg
