#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "lbpseg/image_io.hpp"
#include "lbpseg/lbp.hpp"
#include "lbpseg/pipeline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace lbpseg;

bool is_degenerate(ErrorCode code) {
    return code == ErrorCode::DegenerateVariance || code == ErrorCode::DegenerateData;
}

void add_pipeline_options(CLI::App* cmd, PipelineConfig& cfg, std::string& variant) {
    cmd->add_option("--variant", variant, "Feature space: ab (default) or zn")
        ->check(CLI::IsMember({"ab", "zn"}));
    cmd->add_option("--sigma", cfg.sigma, "Gaussian sigma for the flatness map, in pixels")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", cfg.seed, "Clustering RNG seed");
    cmd->add_option("--restarts", cfg.restarts, "K-means restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", cfg.max_iter, "K-means iteration cap")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", cfg.tol, "K-means relative movement tolerance")->check(CLI::NonNegativeNumber);
}

int run_segment(const std::string& image_path, const std::string& gt_path, const std::string& out_path,
                const std::string& overlay_path, const PipelineConfig& cfg, bool verbose) {
    const RasterImage img = read_image(image_path);
    PipelineTrace trace;
    BinaryMask mask;
    try {
        mask = segment_image(img, cfg, &trace);
    } catch (const Error& e) {
        if (is_degenerate(e.code())) {
            std::fprintf(stderr, "unsegmentable: %s\n", e.what());
            return 2;
        }
        throw;
    }

    if (verbose) {
        std::printf("centroids ([a b] per cluster): [%.4f %.4f] [%.4f %.4f]\n", trace.centroids[0].x,
                    trace.centroids[0].y, trace.centroids[1].x, trace.centroids[1].y);
        std::printf("sse %.6g  iterations %d\n", trace.sse, trace.iterations);
    }
    if (!out_path.empty())
        write_mask_png(out_path, mask);
    if (!overlay_path.empty())
        write_rgb_png(overlay_path, overlay_contour(img, mask));

    if (!gt_path.empty()) {
        const BinaryMask gt = read_mask(gt_path);
        std::printf("be %.3f\n", border_error(mask, gt));
        std::printf("tdr %.3f\n", tdr(mask, gt));
        std::printf("fpr %.3f\n", fpr(mask, gt));
        std::printf("g_perp %.3f\n", g_perp(mask, trace.luminance));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Skin lesion segmentation via local-binary-pattern clustering"};
    app.require_subcommand(1);

    // segment
    std::string image_path, gt_path, out_path, overlay_path, variant = "ab";
    PipelineConfig cfg;
    bool no_postprocess = false, verbose = false;
    CLI::App* segment = app.add_subcommand("segment", "Segment a single image");
    segment->add_option("image", image_path, "Input image (PNG or BMP)")->required();
    segment->add_option("--gt", gt_path, "Ground-truth mask; prints metrics when given");
    segment->add_option("--out", out_path, "Write the segmentation mask PNG here");
    segment->add_option("--overlay", overlay_path, "Write the red-contour overlay PNG here");
    add_pipeline_options(segment, cfg, variant);
    segment->add_flag("--no-postprocess", no_postprocess, "Skip hole filling / component cleanup");
    segment->add_flag("-v,--verbose", verbose, "Print clustering diagnostics");

    // evaluate
    std::string manifest_path, exclude_path, report_path, masks_dir, eval_variant = "ab";
    PipelineConfig eval_cfg;
    int jobs = 1;
#ifdef _OPENMP
    jobs = omp_get_max_threads();
#endif
    CLI::App* evaluate = app.add_subcommand("evaluate", "Run the pipeline over a dataset manifest");
    evaluate->add_option("--manifest", manifest_path, "Dataset manifest CSV")->required();
    evaluate->add_option("--exclude", exclude_path, "Image ids to drop, one per line");
    evaluate->add_option("--report", report_path, "Report CSV destination")->required();
    evaluate->add_option("--masks-dir", masks_dir, "Directory for per-image mask PNGs");
    add_pipeline_options(evaluate, eval_cfg, eval_variant);
    evaluate->add_option("--jobs", jobs, "Images processed in parallel")->check(CLI::PositiveNumber);

    // lbp-stats
    std::string stats_image, stats_gt, stats_out;
    CLI::App* lbp_stats = app.add_subcommand("lbp-stats", "Per-class LBP presence ratios vs a ground-truth mask");
    lbp_stats->add_option("image", stats_image, "Input image (PNG or BMP)")->required();
    lbp_stats->add_option("--gt", stats_gt, "Ground-truth mask")->required();
    lbp_stats->add_option("--out", stats_out, "Presence CSV destination")->required();

    // bench
    std::string bench_image;
    int iters = 5;
    CLI::App* bench = app.add_subcommand("bench", "Time the full pipeline on one image");
    bench->add_option("image", bench_image, "Input image (PNG or BMP)")->required();
    bench->add_option("--iters", iters, "Number of timed runs")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (segment->parsed()) {
            cfg.variant = variant == "zn" ? lbpseg::FeatureVariant::Zn : lbpseg::FeatureVariant::Ab;
            cfg.postprocess = !no_postprocess;
            return run_segment(image_path, gt_path, out_path, overlay_path, cfg, verbose);
        }
        if (evaluate->parsed()) {
            eval_cfg.variant = eval_variant == "zn" ? lbpseg::FeatureVariant::Zn : lbpseg::FeatureVariant::Ab;
            std::vector<lbpseg::DatasetRecord> records = lbpseg::load_manifest(manifest_path);
            if (!exclude_path.empty()) {
                std::vector<std::string> warnings;
                records = lbpseg::apply_exclusions(records, exclude_path, &warnings);
                for (const std::string& w : warnings)
                    std::fprintf(stderr, "warning: %s\n", w.c_str());
            }
            const lbpseg::EvaluationResult result = lbpseg::evaluate_dataset(records, eval_cfg, jobs, masks_dir);
            lbpseg::write_report_csv(report_path, result);
            for (const lbpseg::FailedImage& f : result.failures)
                std::fprintf(stderr, "unsegmentable: %s (%s)\n", f.image_id.c_str(), f.reason.c_str());
            std::printf("evaluated %zu image(s), %zu failure(s); report written to %s\n",
                        result.records.size(), result.failures.size(), report_path.c_str());
            return 0;
        }
        if (lbp_stats->parsed()) {
            const lbpseg::RasterImage img = lbpseg::read_image(stats_image);
            const lbpseg::BinaryMask gt = lbpseg::read_mask(stats_gt);
            const lbpseg::LbpMap map = lbpseg::lbp_map(lbpseg::to_luminance(img));
            lbpseg::write_presence_csv(stats_out, lbpseg::presence_analysis(map, gt));
            std::printf("presence table written to %s\n", stats_out.c_str());
            return 0;
        }
        if (bench->parsed()) {
            const lbpseg::RasterImage img = lbpseg::read_image(bench_image);
            const double mean_s = lbpseg::bench_pipeline(img, lbpseg::PipelineConfig{}, iters);
            std::printf("%dx%d image, %d run(s): mean %.3f s per image\n", img.width, img.height, iters, mean_s);
            return 0;
        }
    } catch (const lbpseg::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
