#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "hsm/eval/eval.hpp"
#include "hsm/pipeline/generate.hpp"
#include "hsm/pipeline/planner.hpp"
#include "hsm/pipeline/plans.hpp"
#include "hsm/plot/svg.hpp"
#include "hsm/scene/assets.hpp"
#include "hsm/solver/solver.hpp"
#include "hsm/support/region_json.hpp"
#include "hsm/support/support.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hsm::Error("cannot open " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw hsm::Error(path + " is not valid JSON");
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw hsm::Error("cannot write " + path);
    out << text;
}

hsm::SupportConfig config_from_json(const json& j) {
    hsm::SupportConfig cfg;
    auto get = [&](const char* key, double& field) {
        if (j.contains(key)) field = j[key].get<double>();
    };
    get("t_norm", cfg.t_norm);
    get("t_adj", cfg.t_adj);
    get("t_clear", cfg.t_clear);
    get("h_top", cfg.h_top);
    get("t_merge", cfg.t_merge);
    get("t_hzn", cfg.t_hzn);
    get("t_vert", cfg.t_vert);
    get("r_plane", cfg.r_plane);
    get("tol", cfg.tol);
    cfg.validate();
    return cfg;
}

int cmd_extract_regions(const std::string& mesh_path, const std::string& config_path,
                        const std::string& out_path, bool baseline) {
    hsm::SupportConfig cfg;
    if (!config_path.empty()) cfg = config_from_json(load_json_file(config_path));
    hsm::TriMesh mesh = hsm::TriMesh::load_obj(mesh_path);
    std::vector<hsm::SupportRegion> regions =
        baseline ? hsm::top_surface_baseline(mesh, cfg)
                 : hsm::extract_support_regions(mesh, cfg);
    ordered_json doc = hsm::regions_document(regions, mesh_path);
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
    std::cerr << "extracted " << regions.size() << " region(s) from " << mesh_path << "\n";
    return 0;
}

hsm::SolveDomain domain_from_json(const json& j) {
    hsm::SolveDomain dom;
    if (!j.contains("boundary") || !j["boundary"].is_array())
        throw hsm::Error("domain: missing boundary");
    for (const json& v : j["boundary"])
        dom.boundary.pts.push_back({v[0].get<double>(), v[1].get<double>()});
    if (j.contains("obstacles")) {
        for (const json& oj : j["obstacles"]) {
            hsm::Polygon2 obs;
            for (const json& v : oj) obs.pts.push_back({v[0].get<double>(), v[1].get<double>()});
            dom.obstacles.push_back(std::move(obs));
        }
    }
    dom.grid_step = j.value("grid_step", 0.1);
    return dom;
}

std::vector<hsm::PlacementRequest> requests_from_json(const json& j) {
    if (!j.contains("requests") || !j["requests"].is_array())
        throw hsm::Error("requests: missing 'requests' array");
    std::vector<hsm::PlacementRequest> reqs;
    for (const json& rj : j["requests"]) {
        hsm::PlacementRequest r;
        r.motif_id = rj.at("id").get<std::string>();
        if (!rj.contains("footprint") || rj["footprint"].size() != 2)
            throw hsm::Error("request '" + r.motif_id + "': footprint must be [w, d]");
        r.width = rj["footprint"][0].get<double>();
        r.depth = rj["footprint"][1].get<double>();
        r.initial = hsm::Pose{{rj.at("position")[0].get<double>(), 0.0,
                               rj.at("position")[1].get<double>()},
                              rj.value("rotation", 0.0)};
        r.wall_align = rj.value("wall_alignment", false);
        if (rj.contains("wall_alignment_id") && !rj["wall_alignment_id"].is_null())
            r.wall_id = rj["wall_alignment_id"].get<int>();
        r.ignore_collision = rj.value("ignore_collision", false);
        reqs.push_back(std::move(r));
    }
    return reqs;
}

int cmd_solve_layout(const std::string& domain_path, const std::string& requests_path,
                     double time_limit, const std::string& out_path,
                     const std::string& plot_path) {
    hsm::SolveDomain dom = domain_from_json(load_json_file(domain_path));
    std::vector<hsm::PlacementRequest> reqs = requests_from_json(load_json_file(requests_path));
    hsm::Layout layout = hsm::solve_layout(reqs, dom, time_limit);

    ordered_json doc;
    doc["format"] = "hsm-layout";
    doc["version"] = 1;
    doc["feasible"] = layout.feasible;
    doc["total_sigma"] = layout.total_sigma;
    ordered_json placed = ordered_json::array();
    for (const hsm::PlacedMotif& pm : layout.placed) {
        ordered_json p;
        p["id"] = pm.motif_id;
        p["position"] = {pm.pose.position.x, pm.pose.position.z};
        p["rotation"] = pm.pose.yaw;
        p["sigma"] = pm.sigma;
        placed.push_back(std::move(p));
    }
    doc["placed"] = std::move(placed);
    doc["unplaced"] = layout.unplaced;
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
    if (!plot_path.empty()) hsm::write_layout_svg(plot_path, dom, reqs, layout);
    std::cerr << (layout.feasible ? "feasible" : "INFEASIBLE") << ", total sigma "
              << layout.total_sigma << ", " << layout.elapsed_seconds << "s\n";
    return layout.feasible ? 0 : kExitInfeasible;
}

int cmd_validate_plans(const std::string& dir) {
    hsm::PlanSet plans = hsm::PlanSet::load_dir(dir);
    std::vector<hsm::Violation> violations = hsm::validate_plans(plans);
    if (violations.empty()) {
        std::cout << "plans in " << dir << " are valid\n";
        return 0;
    }
    for (const hsm::Violation& v : violations)
        std::cout << v.path << ": " << v.message << "\n";
    return kExitValidation;
}

int cmd_generate(const std::string& plans_dir, const std::string& manifest_path,
                 const std::string& planner_url, const std::string& embedder_url,
                 uint64_t seed, int threads, const std::string& out_path,
                 const std::string& plot_path) {
    hsm::PlanSet plans = hsm::PlanSet::load_dir(plans_dir);
    hsm::AssetManifest manifest = hsm::AssetManifest::load(manifest_path);

    std::unique_ptr<hsm::Embedder> embedder;
    if (!embedder_url.empty())
        embedder = hsm::make_http_embedder(embedder_url);
    else
        embedder = std::make_unique<hsm::HashEmbedder>(
            manifest.embedding_dim ? manifest.embedding_dim : 16);

    std::unique_ptr<hsm::PlannerClient> planner;
    if (!planner_url.empty())
        planner = hsm::make_http_planner(planner_url);
    else
        planner = std::make_unique<hsm::FilePlanner>(plans_dir);

    hsm::GenerateOptions opt;
    opt.seed = seed;
    opt.threads = threads;
    try {
        hsm::Scene scene =
            hsm::run_generate(plans, manifest, *embedder, planner.get(), opt);
        std::string text = hsm::serialize_scene(scene);
        if (out_path.empty())
            std::cout << text;
        else
            write_text(out_path, text);
        if (!plot_path.empty()) hsm::write_scene_svg(plot_path, scene);
        std::cerr << "scene with " << scene.objects.size() << " objects, occupancy "
                  << hsm::occupancy_ratio(scene) << "\n";
        return 0;
    } catch (const hsm::PipelineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!e.partial_scene_json.empty()) {
            std::string dump = out_path.empty() ? "scene.partial.json"
                                                : out_path + ".partial.json";
            write_text(dump, e.partial_scene_json);
            std::cerr << "partial scene dumped to " << dump << "\n";
        }
        return e.code;
    }
}

int cmd_eval_regions(const std::string& dataset_dir, bool baseline,
                     const std::string& csv_path) {
    std::vector<hsm::DatasetItem> items = hsm::scan_dataset_dir(dataset_dir);
    if (items.empty()) {
        std::cerr << "no <name>.obj + <name>.regions.json pairs in " << dataset_dir << "\n";
        return 1;
    }
    hsm::SupportConfig cfg;
    hsm::Extractor extractor = [&](const hsm::TriMesh& mesh) {
        return baseline ? hsm::top_surface_baseline(mesh, cfg)
                        : hsm::extract_support_regions(mesh, cfg);
    };
    hsm::DatasetReport report = hsm::dataset_eval(items, extractor);
    std::cout << "objects evaluated: " << report.rows.size() - report.failures << "/"
              << report.rows.size() << "\n";
    std::cout << "mean F1@0.5:        " << report.mean_f1 << "\n";
    std::cout << "mean IoU (matched): " << report.mean_iou_matched << "\n";
    std::cout << "mean IoU (all gt):  " << report.mean_iou_all_gt << "\n";
    if (!csv_path.empty()) write_text(csv_path, report.to_csv());
    return report.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hierarchical indoor-scene engine: support regions, motifs, layout "
                 "solving, generation, and evaluation"};
    app.require_subcommand(1);

    // extract-regions
    std::string mesh_path, config_path, regions_out;
    bool baseline = false;
    CLI::App* extract = app.add_subcommand(
        "extract-regions", "Extract support regions from a triangle mesh");
    extract->add_option("mesh", mesh_path, "Wavefront OBJ mesh")->required();
    extract->add_option("--config", config_path, "threshold config JSON");
    extract->add_option("--out", regions_out, "output regions.json (default stdout)");
    extract->add_flag("--baseline", baseline, "top-surface baseline only");

    // solve-layout
    std::string domain_path, requests_path, layout_out, layout_plot;
    double time_limit = 10.0;
    CLI::App* solve = app.add_subcommand("solve-layout",
                                         "Place motif footprints inside a support region");
    solve->add_option("domain", domain_path, "domain.json")->required();
    solve->add_option("requests", requests_path, "requests.json")->required();
    solve->add_option("--time-limit", time_limit, "solver time limit in seconds");
    solve->add_option("--out", layout_out, "output layout.json (default stdout)");
    solve->add_option("--plot", layout_plot, "top-down SVG debug plot");

    // validate-plans
    std::string validate_dir;
    CLI::App* validate = app.add_subcommand("validate-plans",
                                            "Check a directory of plan documents");
    validate->add_option("dir", validate_dir, "plan directory")->required();

    // generate
    std::string plans_dir, manifest_path, planner_url, embedder_url, scene_out, scene_plot;
    uint64_t seed = 0;
    int threads = 1;
    CLI::App* generate = app.add_subcommand("generate",
                                            "Generate a scene from plan documents");
    generate->add_option("--plans", plans_dir, "plan directory")->required();
    generate->add_option("--assets", manifest_path, "asset manifest.json")->required();
    generate->add_option("--planner", planner_url, "external planner base URL");
    generate->add_option("--embedder", embedder_url, "embedding service base URL");
    generate->add_option("--seed", seed, "generation seed");
    generate->add_option("--threads", threads, "region-extraction thread count");
    generate->add_option("--out", scene_out, "output scene.json (default stdout)");
    generate->add_option("--plot", scene_plot, "top-down SVG of the scene");

    // eval-regions
    std::string dataset_dir, csv_path;
    bool eval_baseline = false;
    CLI::App* eval = app.add_subcommand("eval-regions",
                                        "Score extracted regions against annotations");
    eval->add_option("dataset", dataset_dir, "dataset directory")->required();
    eval->add_flag("--baseline", eval_baseline, "score the top-surface baseline");
    eval->add_option("--csv", csv_path, "per-object CSV output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed())
            return cmd_extract_regions(mesh_path, config_path, regions_out, baseline);
        if (solve->parsed())
            return cmd_solve_layout(domain_path, requests_path, time_limit, layout_out,
                                    layout_plot);
        if (validate->parsed()) return cmd_validate_plans(validate_dir);
        if (generate->parsed())
            return cmd_generate(plans_dir, manifest_path, planner_url, embedder_url, seed,
                                threads, scene_out, scene_plot);
        if (eval->parsed()) return cmd_eval_regions(dataset_dir, eval_baseline, csv_path);
    } catch (const hsm::PlanError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
