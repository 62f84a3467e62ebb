#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hsm/pipeline/generate.hpp"
#include "hsm/pipeline/planner.hpp"
#include "hsm/pipeline/plans.hpp"

using namespace hsm;
using nlohmann::json;

namespace {

const std::string kFixtures = HSM_FIXTURE_DIR;

PlanSet bedroom_plans() { return PlanSet::load_dir(kFixtures + "/plans_bedroom"); }

AssetManifest bedroom_manifest() {
    return AssetManifest::load(kFixtures + "/assets/manifest.json");
}

Scene generate_bedroom(const std::string& plans_dir, int threads = 1) {
    PlanSet plans = PlanSet::load_dir(plans_dir);
    AssetManifest manifest = bedroom_manifest();
    HashEmbedder embedder(manifest.embedding_dim);
    FilePlanner planner(plans_dir);
    GenerateOptions opt;
    opt.seed = 0;
    opt.threads = threads;
    return run_generate(plans, manifest, embedder, &planner, opt);
}

// Planner returning scripted augment responses per attempt.
class ScriptedPlanner : public PlannerClient {
public:
    explicit ScriptedPlanner(std::vector<json> responses)
        : responses_(std::move(responses)) {}
    bool supports(const std::string& kind) const override { return kind == "augment"; }
    json request(const std::string&, const json&, const std::string& reason) override {
        last_reason = reason;
        ++calls;
        if (responses_.empty()) throw PlanError("augment", "script exhausted");
        json r = responses_.front();
        if (responses_.size() > 1) responses_.erase(responses_.begin());
        return r;
    }
    int calls = 0;
    std::string last_reason;

private:
    std::vector<json> responses_;
};

}  // namespace

TEST_CASE("plan loading and validation: the bedroom fixtures are clean") {
    PlanSet plans = bedroom_plans();
    CHECK(plans.hierarchies.size() == 4);
    CHECK(plans.provenance.size() == 7);
    CHECK(validate_plans(plans).empty());
}

TEST_CASE("parse_requirement_plan: boundary must start at the origin") {
    json doc = json::parse(R"({"room_type":"den",
        "room": {"floorplan": [[1,0],[4,0],[4,4],[1,4]], "room_height": 2.5},
        "objects": [], "small_objects": []})");
    CHECK_THROWS_WITH_AS(parse_requirement_plan(doc),
                         doctest::Contains("must start at (0,0)"), PlanError);
}

TEST_CASE("parse_requirement_plan: dangling parent_object is a reference error") {
    json doc = json::parse(R"({"room_type":"den",
        "objects": [{"id":1,"name":"desk","dimensions":[1,1,1],"amount":1}],
        "small_objects": [{"id":2,"name":"book","dimensions":[0.2,0.05,0.15],
                           "amount":1,"parent_object":99}]})");
    CHECK_THROWS_WITH_AS(parse_requirement_plan(doc), doctest::Contains("unknown furniture"),
                         PlanError);
}

TEST_CASE("parse_plan: version mismatch is rejected") {
    json doc = json::parse(R"({"version": 2, "room_type": "x"})");
    CHECK_THROWS_WITH_AS(parse_requirement_plan(doc), doctest::Contains("version"),
                         PlanError);
}

TEST_CASE("validate_plans: object in two arrangements") {
    PlanSet plans = bedroom_plans();
    // wardrobe (id 3) also listed in the desk arrangement
    plans.grouping.arrangements[2].members.push_back({3, 1});
    std::vector<Violation> v = validate_plans(plans);
    bool found = false;
    for (const Violation& violation : v)
        found |= violation.message.find("more than one arrangement") != std::string::npos;
    CHECK(found);
}

TEST_CASE("validate_plans: placement for unknown arrangement") {
    PlanSet plans = bedroom_plans();
    PlacementEntry ghost;
    ghost.id = "ghost_arrangement";
    ghost.position = {1, 1};
    plans.placement.positions.push_back(ghost);
    std::vector<Violation> v = validate_plans(plans);
    bool found = false;
    for (const Violation& violation : v)
        found |= violation.message.find("unknown arrangement") != std::string::npos;
    CHECK(found);
}

TEST_CASE("validate_plans: hierarchy violations surface with the arrangement id") {
    PlanSet plans = bedroom_plans();
    MotifNode bad;
    bad.type = MotifType::in_front_of;
    for (const char* name : {"sofa", "coffee table", "tv stand"}) {
        MotifNode leaf;
        leaf.is_object = true;
        leaf.description = name;
        bad.elements.push_back(leaf);
    }
    plans.hierarchies["desk_study"] = bad;
    std::vector<Violation> v = validate_plans(plans);
    bool arity = false;
    for (const Violation& violation : v)
        arity |= violation.path.find("hierarchy-desk_study") != std::string::npos &&
                 violation.message.find("exactly 2") != std::string::npos;
    CHECK(arity);
}

TEST_CASE("validate_plans: wall id out of range") {
    PlanSet plans = bedroom_plans();
    plans.placement.positions[0].wall_alignment_id = 7;
    std::vector<Violation> v = validate_plans(plans);
    bool found = false;
    for (const Violation& violation : v)
        found |= violation.message.find("out of range") != std::string::npos;
    CHECK(found);
}

TEST_CASE("run_generate: bedroom fixture produces an audited scene") {
    Scene scene = generate_bedroom(kFixtures + "/plans_bedroom");
    CHECK(audit_scene(scene).empty());
    // 1 bed + 2 nightstands + 1 wardrobe + 1 desk + 3 books
    CHECK(scene.objects.size() == 8);
    CHECK(scene.motifs.size() == 4);
    int books_on_desk = 0;
    for (const SceneObject& o : scene.objects) {
        if (o.spec.name != "book") continue;
        CHECK_FALSE(o.parent.is_floor);
        CHECK(o.parent.furniture_id == "desk.0");
        ++books_on_desk;
    }
    CHECK(books_on_desk == 3);
    CHECK(scene.furniture_regions.count("desk.0") == 1);
    // occupancy below t_occ without a planner-backed augment file
    double occ = occupancy_ratio(scene);
    CHECK(occ < 0.3);
    bool skipped_note = false;
    for (const std::string& n : scene.notes)
        skipped_note |= n.find("augmentation skipped") != std::string::npos;
    CHECK(skipped_note);
    // wall-aligned furniture faces into the room
    for (const SceneMotifRecord& m : scene.motifs) {
        if (m.id == "bed_nightstands") CHECK(m.pose.yaw == doctest::Approx(180.0));
        if (m.id == "desk_study") CHECK(m.pose.yaw == doctest::Approx(270.0));
    }
}

TEST_CASE("run_generate: augment fixture adds tagged furniture") {
    Scene scene = generate_bedroom(kFixtures + "/plans_bedroom_aug");
    CHECK(audit_scene(scene).empty());
    CHECK(scene.objects.size() == 9);
    int augmented = 0;
    for (const SceneObject& o : scene.objects)
        if (o.augmented) {
            ++augmented;
            CHECK(o.spec.name == "armchair");
            CHECK(o.parent.is_floor);
        }
    CHECK(augmented == 1);
    bool added_note = false;
    for (const std::string& n : scene.notes)
        added_note |= n.find("augmentation added") != std::string::npos;
    CHECK(added_note);
    CHECK(occupancy_ratio(scene) >= 0.3);
}

TEST_CASE("run_generate: byte-identical across runs and thread counts") {
    std::string a = serialize_scene(generate_bedroom(kFixtures + "/plans_bedroom", 1));
    std::string b = serialize_scene(generate_bedroom(kFixtures + "/plans_bedroom", 1));
    std::string c = serialize_scene(generate_bedroom(kFixtures + "/plans_bedroom", 4));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("run_generate: matches the frozen golden scene") {
    std::ifstream golden(kFixtures + "/golden_scene.json");
    REQUIRE_MESSAGE(golden.good(), "fixtures/golden_scene.json missing");
    std::stringstream ss;
    ss << golden.rdbuf();
    CHECK(serialize_scene(generate_bedroom(kFixtures + "/plans_bedroom")) == ss.str());
}

TEST_CASE("run_generate: empty plans give an empty room") {
    PlanSet plans;
    plans.requirement.room_type = "empty den";
    Room room;
    room.boundary = Polygon2{{{0, 0}, {3, 0}, {3, 3}, {0, 3}}};
    plans.requirement.room = room;
    AssetManifest manifest = bedroom_manifest();
    HashEmbedder embedder(manifest.embedding_dim);
    Scene scene = run_generate(plans, manifest, embedder, nullptr, GenerateOptions{});
    CHECK(scene.objects.empty());
    CHECK(audit_scene(scene).empty());
    bool skipped = false;
    for (const std::string& n : scene.notes)
        skipped |= n.find("augmentation skipped") != std::string::npos;
    CHECK(skipped);
}

TEST_CASE("run_generate: invalid plans abort with exit-code hint 2") {
    PlanSet plans = bedroom_plans();
    plans.placement.positions.pop_back();  // drop desk_books placement
    AssetManifest manifest = bedroom_manifest();
    HashEmbedder embedder(manifest.embedding_dim);
    try {
        run_generate(plans, manifest, embedder, nullptr, GenerateOptions{});
        FAIL("expected PipelineError");
    } catch (const PipelineError& e) {
        CHECK(e.code == 2);
        CHECK(e.stage_name == "validate");
    }
}

TEST_CASE("run_generate: infeasible solve reports exit-code hint 3 with a partial dump") {
    PlanSet plans = bedroom_plans();
    // shrink the room so the bed group cannot fit
    Room tiny;
    tiny.boundary = Polygon2{{{0, 0}, {2.0, 0}, {2.0, 1.6}, {0, 1.6}}};
    plans.requirement.room = tiny;
    AssetManifest manifest = bedroom_manifest();
    HashEmbedder embedder(manifest.embedding_dim);
    try {
        run_generate(plans, manifest, embedder, nullptr, GenerateOptions{});
        FAIL("expected PipelineError");
    } catch (const PipelineError& e) {
        CHECK(e.code == 3);
        CHECK(e.stage_name == "solve-floor");
        CHECK_FALSE(e.partial_scene_json.empty());
        Scene partial = parse_scene(e.partial_scene_json);
        CHECK(partial.objects.empty());
    }
}

TEST_CASE("planner retry loop: failure reason feeds later attempts") {
    PlanSet plans = bedroom_plans();
    AssetManifest manifest = bedroom_manifest();
    HashEmbedder embedder(manifest.embedding_dim);

    json good = json::parse(R"({"objects":[{"id":100,"name":"armchair",
        "description":"reading armchair","dimensions":[0.8,0.9,0.8],"amount":1}],
        "positions":[{"id":"aug_100","position":[1.2,0.9],"rotation":0,
        "wall_alignment":false,"ignore_collision":false}]})");
    json bad = json::parse(R"({"objects":[{"id":100,"name":"armchair",
        "description":"x","dimensions":[0.8,0.9,0.8],"amount":1}],
        "positions":[{"id":"aug_999","position":[1.2,0.9],"rotation":0,
        "wall_alignment":false,"ignore_collision":false}]})");

    ScriptedPlanner flaky({bad, bad, good});
    Scene scene = run_generate(plans, manifest, embedder, &flaky, GenerateOptions{});
    CHECK(flaky.calls == 3);
    CHECK(flaky.last_reason.find("unknown augment arrangement") != std::string::npos);
    CHECK(scene.objects.size() == 9);

    ScriptedPlanner hopeless(std::vector<json>{bad});
    try {
        run_generate(plans, manifest, embedder, &hopeless, GenerateOptions{});
        FAIL("expected PipelineError");
    } catch (const PipelineError& e) {
        CHECK(e.stage_name == "augment");
        CHECK(hopeless.calls == 3);  // R = 3 attempts, then abort
    }
}

TEST_CASE("FilePlanner: supports only kinds with canned responses") {
    FilePlanner with_augment(kFixtures + "/plans_bedroom_aug");
    CHECK(with_augment.supports("augment"));
    CHECK_FALSE(with_augment.supports("decompose"));
    CHECK_FALSE(with_augment.supports("bogus"));
    FilePlanner without(kFixtures + "/plans_bedroom");
    CHECK_FALSE(without.supports("augment"));
    CHECK_THROWS_AS(without.request("augment", {}, ""), PlanError);
}

TEST_CASE("CLI: validate-plans, generate, extract-regions, exit codes") {
    namespace fs = std::filesystem;
    const std::string cli = HSM_CLI_PATH;
    fs::path tmp = fs::temp_directory_path() / "hsm_cli_test";
    fs::create_directories(tmp);

    auto run = [&](const std::string& args) {
        std::string cmd = cli + " " + args + " > " + (tmp / "out.txt").string() + " 2>" +
                          (tmp / "err.txt").string();
        int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc);
    };

    CHECK(run("validate-plans " + kFixtures + "/plans_bedroom") == 0);

    std::string scene_path = (tmp / "scene.json").string();
    CHECK(run("generate --plans " + kFixtures + "/plans_bedroom --assets " + kFixtures +
              "/assets/manifest.json --out " + scene_path + " --plot " +
              (tmp / "scene.svg").string()) == 0);
    std::ifstream scene_file(scene_path);
    REQUIRE(scene_file.good());
    std::stringstream ss;
    ss << scene_file.rdbuf();
    CHECK(serialize_scene(generate_bedroom(kFixtures + "/plans_bedroom")) == ss.str());
    CHECK(fs::exists(tmp / "scene.svg"));

    // a broken plan directory exits 2
    fs::path broken = tmp / "broken_plans";
    fs::create_directories(broken);
    for (const auto& entry : fs::directory_iterator(kFixtures + "/plans_bedroom"))
        fs::copy_file(entry.path(), broken / entry.path().filename(),
                      fs::copy_options::overwrite_existing);
    fs::remove(broken / "placement.json");
    std::ofstream(broken / "placement.json") << R"({"positions": []})";
    CHECK(run("validate-plans " + broken.string()) == 2);
    CHECK(run("generate --plans " + broken.string() + " --assets " + kFixtures +
              "/assets/manifest.json --out " + (tmp / "x.json").string()) == 2);

    // extract-regions on a fixture mesh
    std::string regions_path = (tmp / "regions.json").string();
    CHECK(run("extract-regions " + kFixtures + "/assets/meshes/desk01.obj --out " +
              regions_path) == 0);
    std::ifstream regions_file(regions_path);
    json doc = json::parse(regions_file);
    CHECK(doc["regions"].size() == 5);  // desk top + four leg bottoms
    CHECK(run("extract-regions " + kFixtures + "/assets/meshes/desk01.obj --baseline "
              "--out " + regions_path) == 0);
    std::ifstream base_file(regions_path);
    json base = json::parse(base_file);
    CHECK(base["regions"].size() == 1);
}

TEST_CASE("CLI: solve-layout writes a layout and exits 3 when infeasible") {
    namespace fs = std::filesystem;
    const std::string cli = HSM_CLI_PATH;
    fs::path tmp = fs::temp_directory_path() / "hsm_cli_test";
    fs::create_directories(tmp);
    std::ofstream(tmp / "domain.json")
        << R"({"boundary": [[0,0],[4,0],[4,4],[0,4]], "grid_step": 0.1})";
    std::ofstream(tmp / "requests.json")
        << R"({"requests": [{"id":"a","footprint":[1,1],"position":[2,2],"rotation":0}]})";
    auto run = [&](const std::string& args) {
        std::string cmd = cli + " " + args + " > /dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    CHECK(run("solve-layout " + (tmp / "domain.json").string() + " " +
              (tmp / "requests.json").string() + " --out " +
              (tmp / "layout.json").string() + " --plot " + (tmp / "layout.svg").string()) ==
          0);
    std::ifstream layout_file(tmp / "layout.json");
    json layout = json::parse(layout_file);
    CHECK(layout["feasible"].get<bool>());
    CHECK(layout["total_sigma"].get<double>() == doctest::Approx(0.0));
    CHECK(fs::exists(tmp / "layout.svg"));

    std::ofstream(tmp / "requests.json")
        << R"({"requests": [{"id":"giant","footprint":[9,9],"position":[2,2],"rotation":0}]})";
    CHECK(run("solve-layout " + (tmp / "domain.json").string() + " " +
              (tmp / "requests.json").string()) == 3);
}
