#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hsm/geom/mesh.hpp"
#include "hsm/support/support.hpp"

namespace hsm {

struct AnnotatedRegion {
    Polygon2 footprint;
    double surface_height = 0.0;
    double clearance = 0.0;  // ground-truth top regions carry 1.0 m
    bool is_top = false;
};

inline AnnotatedRegion to_annotated(const SupportRegion& r) {
    return {r.footprint, r.surface_height, r.clearance, r.is_top};
}

// Projected-volume IoU with a height threshold: zero whenever the
// surface heights differ by more than t_d, otherwise the volume overlap
// of footprint-area x clearance-interval boxes. Symmetric.
double region_iou(const AnnotatedRegion& a, const AnnotatedRegion& b, double t_d = 0.1);

// Minimum-cost assignment on a square matrix (O(n^3) potentials
// method). Returns the column matched to each row.
std::vector<int> hungarian_min(const std::vector<std::vector<double>>& cost);

struct MatchReport {
    std::vector<std::vector<double>> iou;              // |gt| x |pred|
    std::vector<std::pair<int, int>> assignment;       // (gt, pred), IoU > 0 only
    int true_positives = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double mean_iou_matched = 0.0;  // over matched pairs with IoU > 0
    double mean_iou_all_gt = 0.0;   // unmatched ground truth counts as 0
};

// Hungarian assignment maximizing total IoU; a matched pair is a true
// positive iff its IoU reaches the threshold.
MatchReport match_and_score(const std::vector<AnnotatedRegion>& gt,
                            const std::vector<AnnotatedRegion>& pred, double t_d = 0.1,
                            double threshold = 0.5);
MatchReport match_and_score(const std::vector<AnnotatedRegion>& gt,
                            const std::vector<SupportRegion>& pred, double t_d = 0.1,
                            double threshold = 0.5);

// Per-object annotation document: {"object": name, "regions": [...]}
// where each region gives either footprint vertices + surface_height or
// a face-index list (footprint and height derived from the mesh), plus
// clearance and the top flag.
std::vector<AnnotatedRegion> load_annotations(const std::string& path, const TriMesh* mesh);

struct DatasetItem {
    std::string name;
    std::string mesh_path;
    std::string annotation_path;
};

struct ObjectEvalRow {
    std::string name;
    int gt_count = 0;
    int pred_count = 0;
    int true_positives = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double mean_iou_matched = 0.0;
    double mean_iou_all_gt = 0.0;
    std::string error;  // per-object failures are recorded, not fatal
};

struct DatasetReport {
    std::vector<ObjectEvalRow> rows;
    double mean_f1 = 0.0;            // over evaluated objects
    double mean_iou_matched = 0.0;
    double mean_iou_all_gt = 0.0;
    int failures = 0;

    std::string to_csv() const;
};

using Extractor = std::function<std::vector<SupportRegion>(const TriMesh&)>;

DatasetReport dataset_eval(const std::vector<DatasetItem>& items, const Extractor& extractor,
                           double t_d = 0.1, double threshold = 0.5);

// Scans a dataset directory for <name>.obj / <name>.regions.json pairs.
std::vector<DatasetItem> scan_dataset_dir(const std::string& dir);

}  // namespace hsm
