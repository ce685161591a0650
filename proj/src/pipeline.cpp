#include "lbpseg/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lbpseg/image_io.hpp"
#include "lbpseg/kmeans.hpp"
#include "lbpseg/lbp.hpp"
#include "lbpseg/morphology.hpp"

namespace lbpseg {

void PipelineConfig::validate() const {
    if (sigma < 0.0)
        throw Error(ErrorCode::Parameter, "config: sigma must be >= 0");
    if (restarts < 1)
        throw Error(ErrorCode::Parameter, "config: restarts must be >= 1");
    if (max_iter < 1)
        throw Error(ErrorCode::Parameter, "config: max_iter must be >= 1");
    if (tol < 0.0)
        throw Error(ErrorCode::Parameter, "config: tol must be >= 0");
}

BinaryMask segment_image(const RasterImage& img, const PipelineConfig& cfg) {
    return segment_image(img, cfg, nullptr);
}

BinaryMask segment_image(const RasterImage& img, const PipelineConfig& cfg, PipelineTrace* trace) {
    cfg.validate();

    const ScalarMap y = to_luminance(img);
    const LbpMap lbp = lbp_map(y);
    const BinaryMask flat = flatness_map(lbp);

    ScalarMap l(flat.width, flat.height);
    for (std::size_t i = 0; i < flat.size(); ++i)
        l.data[i] = flat.bits[i];
    const ScalarMap l_smooth = rescale_minmax(gaussian_smooth(l, cfg.sigma));

    const FeatureCloud cloud = build_features(y, l_smooth, cfg.variant);
    const ClusterResult clusters = kmeans2(cloud.points, cfg.seed, cfg.restarts, cfg.max_iter, cfg.tol);
    BinaryMask mask = lesion_cluster_select(clusters, y, l_smooth);

    if (trace) {
        trace->luminance = y;
        trace->l_smooth = l_smooth;
        trace->centroids = clusters.centroids;
        trace->sse = clusters.sse;
        trace->iterations = clusters.iterations;
    }

    if (cfg.postprocess)
        mask = fill_holes(keep_principal_component(mask));
    return mask;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r'))
        ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r'))
        --b;
    return s.substr(a, b - a);
}

} // namespace

std::vector<DatasetRecord> load_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorCode::Manifest, "manifest: cannot open " + path);
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    std::string line;
    if (!std::getline(f, line))
        throw Error(ErrorCode::Manifest, "manifest: empty file " + path);

    std::vector<std::string> header = split_csv_line(line);
    for (std::string& h : header)
        h = trim(h);
    const std::vector<std::string> wanted = {"image_id", "image_path", "mask_path", "class"};
    std::array<int, 4> col{{-1, -1, -1, -1}};
    for (std::size_t w = 0; w < wanted.size(); ++w)
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == wanted[w])
                col[w] = static_cast<int>(i);
    for (std::size_t w = 0; w < wanted.size(); ++w)
        if (col[w] < 0)
            throw Error(ErrorCode::Manifest, "manifest: missing column '" + wanted[w] + "' in " + path);

    std::vector<DatasetRecord> records;
    int row = 1;
    while (std::getline(f, line)) {
        ++row;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() < wanted.size())
            throw Error(ErrorCode::Manifest,
                        "manifest: row " + std::to_string(row) + " has too few columns");
        DatasetRecord rec;
        rec.image_id = trim(fields[static_cast<std::size_t>(col[0])]);
        rec.image_path = (base / trim(fields[static_cast<std::size_t>(col[1])])).string();
        rec.mask_path = (base / trim(fields[static_cast<std::size_t>(col[2])])).string();
        rec.lesion_class = trim(fields[static_cast<std::size_t>(col[3])]);
        if (rec.image_id.empty())
            throw Error(ErrorCode::Manifest, "manifest: row " + std::to_string(row) + " has empty image_id");
        if (rec.lesion_class != "CN" && rec.lesion_class != "AN" && rec.lesion_class != "M")
            throw Error(ErrorCode::Manifest, "manifest: row " + std::to_string(row) + " has unknown class '" +
                                                 rec.lesion_class + "' (expected CN, AN or M)");
        for (const std::string& p : {rec.image_path, rec.mask_path})
            if (!std::filesystem::exists(p))
                throw Error(ErrorCode::Manifest,
                            "manifest: row " + std::to_string(row) + " references missing file " + p);
        records.push_back(std::move(rec));
    }
    if (records.empty())
        throw Error(ErrorCode::Manifest, "manifest: no records in " + path);
    return records;
}

std::vector<DatasetRecord> apply_exclusions(const std::vector<DatasetRecord>& records,
                                            const std::string& exclusion_path,
                                            std::vector<std::string>* warnings) {
    std::ifstream f(exclusion_path);
    if (!f)
        throw Error(ErrorCode::Io, "exclusions: cannot open " + exclusion_path);
    std::set<std::string> excluded;
    std::string line;
    while (std::getline(f, line)) {
        const std::string id = trim(line);
        if (!id.empty())
            excluded.insert(id);
    }

    std::set<std::string> known;
    for (const DatasetRecord& r : records)
        known.insert(r.image_id);
    if (warnings)
        for (const std::string& id : excluded)
            if (!known.count(id))
                warnings->push_back("exclusions: unknown image_id '" + id + "'");

    std::vector<DatasetRecord> out;
    for (const DatasetRecord& r : records)
        if (!excluded.count(r.image_id))
            out.push_back(r);
    return out;
}

namespace {

struct PerImageOutcome {
    bool ok = false;
    MetricsRecord metrics;
    std::string reason;
};

PerImageOutcome process_record(const DatasetRecord& rec, const PipelineConfig& cfg,
                               const std::string& masks_dir) {
    PerImageOutcome out;
    out.metrics.image_id = rec.image_id;
    out.metrics.lesion_class = rec.lesion_class;
    try {
        const RasterImage img = read_image(rec.image_path);
        const BinaryMask gt = read_mask(rec.mask_path);
        if (gt.width != img.width || gt.height != img.height)
            throw Error(ErrorCode::Size, "ground-truth dimensions do not match the image");

        PipelineTrace trace;
        const BinaryMask sm = segment_image(img, cfg, &trace);
        out.metrics.be = border_error(sm, gt);
        out.metrics.tdr = tdr(sm, gt);
        out.metrics.fpr = fpr(sm, gt);
        out.metrics.g_perp = g_perp(sm, trace.luminance);
        if (!masks_dir.empty())
            write_mask_png((std::filesystem::path(masks_dir) / (rec.image_id + ".png")).string(), sm);
        out.ok = true;
    } catch (const Error& e) {
        out.reason = e.what();
    }
    return out;
}

} // namespace

EvaluationResult evaluate_dataset(const std::vector<DatasetRecord>& records, const PipelineConfig& cfg,
                                  int jobs, const std::string& masks_dir) {
    if (records.empty())
        throw Error(ErrorCode::Parameter, "evaluate_dataset: no records");
    cfg.validate();
    if (jobs < 1)
        throw Error(ErrorCode::Parameter, "evaluate_dataset: jobs must be >= 1");
    if (!masks_dir.empty())
        std::filesystem::create_directories(masks_dir);

    std::vector<PerImageOutcome> outcomes(records.size());
    const std::int64_t n = static_cast<std::int64_t>(records.size());
    if (jobs == 1) {
        for (std::int64_t i = 0; i < n; ++i)
            outcomes[static_cast<std::size_t>(i)] = process_record(records[static_cast<std::size_t>(i)], cfg, masks_dir);
    } else {
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (std::int64_t i = 0; i < n; ++i)
            outcomes[static_cast<std::size_t>(i)] = process_record(records[static_cast<std::size_t>(i)], cfg, masks_dir);
    }

    EvaluationResult result;
    for (PerImageOutcome& o : outcomes) {
        if (o.ok)
            result.records.push_back(std::move(o.metrics));
        else
            result.failures.push_back({o.metrics.image_id, o.metrics.lesion_class, o.reason});
    }
    std::sort(result.records.begin(), result.records.end(),
              [](const MetricsRecord& a, const MetricsRecord& b) { return a.image_id < b.image_id; });
    std::sort(result.failures.begin(), result.failures.end(),
              [](const FailedImage& a, const FailedImage& b) { return a.image_id < b.image_id; });
    if (result.records.empty())
        throw Error(ErrorCode::DegenerateData, "evaluate_dataset: every image failed");
    return result;
}

namespace {

void write_summary_rows(std::FILE* f, const std::string& scope, const std::vector<MetricsRecord>& rows) {
    if (rows.size() < 2)
        return;
    std::vector<double> be_v, tdr_v, fpr_v, g_v;
    for (const MetricsRecord& r : rows) {
        be_v.push_back(r.be);
        tdr_v.push_back(r.tdr);
        fpr_v.push_back(r.fpr);
        g_v.push_back(r.g_perp);
    }
    const SummaryStats be_s = summarize(be_v), tdr_s = summarize(tdr_v), fpr_s = summarize(fpr_v),
                       g_s = summarize(g_v);
    std::fprintf(f, "mean,%s,%.3f,%.3f,%.3f,%.3f\n", scope.c_str(), be_s.mean, tdr_s.mean, fpr_s.mean, g_s.mean);
    std::fprintf(f, "stddev,%s,%.3f,%.3f,%.3f,%.3f\n", scope.c_str(), be_s.std, tdr_s.std, fpr_s.std, g_s.std);
    std::fprintf(f, "cv,%s,%.3f,%.3f,%.3f,%.3f\n", scope.c_str(), be_s.cv, tdr_s.cv, fpr_s.cv, g_s.cv);
}

} // namespace

void write_report_csv(const std::string& path, const EvaluationResult& result) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f)
        throw Error(ErrorCode::Io, "write_report_csv: cannot open " + path);
    std::fprintf(f, "image_id,class,be,tdr,fpr,g_perp\n");
    for (const MetricsRecord& r : result.records)
        std::fprintf(f, "%s,%s,%.3f,%.3f,%.3f,%.3f\n", r.image_id.c_str(), r.lesion_class.c_str(), r.be,
                     r.tdr, r.fpr, r.g_perp);
    // failed images keep their row, with empty metric cells
    for (const FailedImage& fi : result.failures)
        std::fprintf(f, "%s,%s,,,,\n", fi.image_id.c_str(), fi.lesion_class.c_str());

    write_summary_rows(f, "ALL", result.records);
    for (const std::string& cls : {"AN", "CN", "M"}) {
        std::vector<MetricsRecord> rows;
        for (const MetricsRecord& r : result.records)
            if (r.lesion_class == cls)
                rows.push_back(r);
        write_summary_rows(f, cls, rows);
    }
    std::fclose(f);
}

RasterImage overlay_contour(const RasterImage& img, const BinaryMask& mask) {
    if (img.width != mask.width || img.height != mask.height)
        throw Error(ErrorCode::Size, "overlay_contour: dimension mismatch");
    RasterImage out = img;
    if (out.channels == 1) {
        RasterImage rgb(img.width, img.height, 3);
        for (std::size_t i = 0; i < img.pixel_count(); ++i)
            rgb.data[3 * i] = rgb.data[3 * i + 1] = rgb.data[3 * i + 2] = img.data[i];
        out = std::move(rgb);
    }
    for (const std::size_t i : boundary_pixels(mask)) {
        out.data[3 * i + 0] = 255;
        out.data[3 * i + 1] = 0;
        out.data[3 * i + 2] = 0;
    }
    return out;
}

double bench_pipeline(const RasterImage& img, const PipelineConfig& cfg, int iters) {
    if (iters < 1)
        throw Error(ErrorCode::Parameter, "bench_pipeline: iters must be >= 1");
    double total = 0.0;
    for (int i = 0; i < iters; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const BinaryMask mask = segment_image(img, cfg);
        const auto t1 = std::chrono::steady_clock::now();
        total += std::chrono::duration<double>(t1 - t0).count();
        if (mask.size() != img.pixel_count())
            throw Error(ErrorCode::Size, "bench_pipeline: unexpected mask size");
    }
    return total / iters;
}

} // namespace lbpseg
