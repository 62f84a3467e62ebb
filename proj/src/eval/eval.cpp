#include "hsm/eval/eval.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hsm {

using nlohmann::json;

double region_iou(const AnnotatedRegion& a, const AnnotatedRegion& b, double t_d) {
    if (area(a.footprint) <= 0.0 || area(b.footprint) <= 0.0)
        throw Error("region_iou: zero-area footprint");
    if (std::abs(a.surface_height - b.surface_height) > t_d) return 0.0;
    double inter_area = polygon_intersection_area(a.footprint, b.footprint);
    double lo = std::max(a.surface_height, b.surface_height);
    double hi = std::min(a.surface_height + a.clearance, b.surface_height + b.clearance);
    double y_overlap = std::max(0.0, hi - lo);
    double inter = inter_area * y_overlap;
    double vol_a = area(a.footprint) * a.clearance;
    double vol_b = area(b.footprint) * b.clearance;
    double uni = vol_a + vol_b - inter;
    if (uni <= 1e-15) return 0.0;
    return inter / uni;
}

std::vector<int> hungarian_min(const std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return {};
    const double kInf = 1e300;
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

MatchReport match_and_score(const std::vector<AnnotatedRegion>& gt,
                            const std::vector<AnnotatedRegion>& pred, double t_d,
                            double threshold) {
    MatchReport rep;
    const size_t ng = gt.size(), np = pred.size();
    rep.iou.assign(ng, std::vector<double>(np, 0.0));
    for (size_t i = 0; i < ng; ++i)
        for (size_t j = 0; j < np; ++j) rep.iou[i][j] = region_iou(gt[i], pred[j], t_d);

    if (ng > 0 && np > 0) {
        // Pad to square and minimize the negated IoU.
        const size_t n = std::max(ng, np);
        std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
        for (size_t i = 0; i < ng; ++i)
            for (size_t j = 0; j < np; ++j) cost[i][j] = -rep.iou[i][j];
        std::vector<int> match = hungarian_min(cost);
        for (size_t i = 0; i < ng; ++i) {
            int j = match[i];
            if (j < 0 || j >= static_cast<int>(np)) continue;
            if (rep.iou[i][j] > 0.0)
                rep.assignment.push_back({static_cast<int>(i), j});
        }
    }

    double matched_sum = 0.0;
    for (const auto& [i, j] : rep.assignment) {
        matched_sum += rep.iou[i][j];
        if (rep.iou[i][j] >= threshold) ++rep.true_positives;
    }
    rep.precision = np > 0 ? static_cast<double>(rep.true_positives) / np : 0.0;
    rep.recall = ng > 0 ? static_cast<double>(rep.true_positives) / ng : 0.0;
    rep.f1 = (rep.precision + rep.recall) > 0.0
                 ? 2.0 * rep.precision * rep.recall / (rep.precision + rep.recall)
                 : 0.0;
    rep.mean_iou_matched =
        rep.assignment.empty() ? 0.0 : matched_sum / rep.assignment.size();
    rep.mean_iou_all_gt = ng > 0 ? matched_sum / ng : 0.0;
    return rep;
}

MatchReport match_and_score(const std::vector<AnnotatedRegion>& gt,
                            const std::vector<SupportRegion>& pred, double t_d,
                            double threshold) {
    std::vector<AnnotatedRegion> p;
    p.reserve(pred.size());
    for (const SupportRegion& r : pred) p.push_back(to_annotated(r));
    return match_and_score(gt, p, t_d, threshold);
}

std::vector<AnnotatedRegion> load_annotations(const std::string& path, const TriMesh* mesh) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open annotation file: " + path);
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw Error(path + ": not valid JSON");
    if (!doc.contains("regions") || !doc["regions"].is_array())
        throw Error(path + ": missing 'regions' array");
    std::vector<AnnotatedRegion> out;
    size_t idx = 0;
    for (const json& rj : doc["regions"]) {
        std::string where = path + ":regions[" + std::to_string(idx++) + "]";
        AnnotatedRegion r;
        if (rj.contains("footprint")) {
            for (const json& p : rj["footprint"]) {
                if (!p.is_array() || p.size() != 2)
                    throw Error(where + ": footprint vertices must be [x,z]");
                r.footprint.pts.push_back({p[0].get<double>(), p[1].get<double>()});
            }
            if (!rj.contains("surface_height"))
                throw Error(where + ": footprint form needs surface_height");
            r.surface_height = rj["surface_height"].get<double>();
        } else if (rj.contains("faces")) {
            if (!mesh) throw Error(where + ": face-list annotation needs the mesh");
            std::vector<uint32_t> faces;
            for (const json& f : rj["faces"]) {
                uint32_t fi = f.get<uint32_t>();
                if (fi >= mesh->face_count())
                    throw Error(where + ": face index out of range");
                faces.push_back(fi);
            }
            r.footprint = footprint_from_faces(*mesh, faces);
            double wsum = 0.0, hsum = 0.0;
            for (uint32_t f : faces) {
                double a = mesh->face_area(f);
                wsum += a;
                hsum += a * mesh->face_centroid(f).y;
            }
            if (rj.contains("surface_height"))
                r.surface_height = rj["surface_height"].get<double>();
            else
                r.surface_height = wsum > 0 ? hsum / wsum : 0.0;
        } else {
            throw Error(where + ": region needs footprint vertices or a face list");
        }
        if (!rj.contains("clearance"))
            throw Error(where + ": missing clearance (extrusion height)");
        r.clearance = rj["clearance"].get<double>();
        r.is_top = rj.value("is_top", false);
        out.push_back(std::move(r));
    }
    return out;
}

DatasetReport dataset_eval(const std::vector<DatasetItem>& items, const Extractor& extractor,
                           double t_d, double threshold) {
    DatasetReport rep;
    double f1_sum = 0, iou_m_sum = 0, iou_a_sum = 0;
    int evaluated = 0;
    for (const DatasetItem& item : items) {
        ObjectEvalRow row;
        row.name = item.name;
        try {
            TriMesh mesh = TriMesh::load_obj(item.mesh_path);
            std::vector<AnnotatedRegion> gt = load_annotations(item.annotation_path, &mesh);
            std::vector<SupportRegion> pred = extractor(mesh);
            MatchReport m = match_and_score(gt, pred, t_d, threshold);
            row.gt_count = static_cast<int>(gt.size());
            row.pred_count = static_cast<int>(pred.size());
            row.true_positives = m.true_positives;
            row.precision = m.precision;
            row.recall = m.recall;
            row.f1 = m.f1;
            row.mean_iou_matched = m.mean_iou_matched;
            row.mean_iou_all_gt = m.mean_iou_all_gt;
            f1_sum += m.f1;
            iou_m_sum += m.mean_iou_matched;
            iou_a_sum += m.mean_iou_all_gt;
            ++evaluated;
        } catch (const std::exception& e) {
            row.error = e.what();
            ++rep.failures;
        }
        rep.rows.push_back(std::move(row));
    }
    if (evaluated > 0) {
        rep.mean_f1 = f1_sum / evaluated;
        rep.mean_iou_matched = iou_m_sum / evaluated;
        rep.mean_iou_all_gt = iou_a_sum / evaluated;
    }
    return rep;
}

std::string DatasetReport::to_csv() const {
    std::ostringstream os;
    os << "object,gt_regions,pred_regions,true_positives,precision,recall,f1,"
          "mean_iou_matched,mean_iou_all_gt,error\n";
    auto fmt = [&](double v) {
        std::ostringstream s;
        s.precision(6);
        s << v;
        return s.str();
    };
    for (const ObjectEvalRow& r : rows) {
        os << r.name << ',' << r.gt_count << ',' << r.pred_count << ',' << r.true_positives
           << ',' << fmt(r.precision) << ',' << fmt(r.recall) << ',' << fmt(r.f1) << ','
           << fmt(r.mean_iou_matched) << ',' << fmt(r.mean_iou_all_gt) << ','
           << (r.error.empty() ? "" : "\"" + r.error + "\"") << '\n';
    }
    os << "MEAN,,,," << "," << "," << fmt(mean_f1) << ',' << fmt(mean_iou_matched) << ','
       << fmt(mean_iou_all_gt) << ",\n";
    return os.str();
}

std::vector<DatasetItem> scan_dataset_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<DatasetItem> items;
    if (!fs::is_directory(dir)) throw Error(dir + " is not a directory");
    std::vector<fs::path> objs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".obj") objs.push_back(entry.path());
    std::sort(objs.begin(), objs.end());
    for (const fs::path& obj : objs) {
        fs::path ann = obj;
        ann.replace_extension(".regions.json");
        if (!fs::exists(ann)) continue;
        items.push_back({obj.stem().string(), obj.string(), ann.string()});
    }
    return items;
}

}  // namespace hsm
