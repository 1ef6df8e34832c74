#include "orbitforge/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "orbitforge/errors.hpp"
#include "orbitforge/exporters.hpp"
#include "orbitforge/orbit_elements.hpp"

namespace orbitforge {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Deterministic RNG
// ---------------------------------------------------------------------------

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

}  // namespace

std::uint64_t RngStream::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
}

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

double RngStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - next_unit();  // (0, 1], keeps log() finite
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, int run_index) {
    return mix64(master_seed ^
                 (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(run_index) + 1)));
}

// ---------------------------------------------------------------------------
// Dispersions
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) {
        parts.push_back(part);
    }
    return parts;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("dispersion: cannot parse " + what + " '" + text + "' as a number");
    }
}

Eigen::Vector3d parse_triple(const std::string& text, const std::string& what) {
    const std::vector<std::string> parts = split(text, ',');
    if (parts.size() != 3) {
        throw ConfigError("dispersion: " + what + " must be 3 comma-separated numbers, got '" +
                          text + "'");
    }
    return {parse_double(parts[0], what), parse_double(parts[1], what),
            parse_double(parts[2], what)};
}

void validate_dispersion(const DispersionSpec& spec) {
    if (spec.kind == DispersionSpec::Kind::uniform) {
        if (!(spec.lo < spec.hi)) {
            throw ConfigError("dispersion '" + spec.target + "': requires lo < hi");
        }
        if (dispersion_target_is_vector(spec.target)) {
            throw ConfigError("dispersion '" + spec.target +
                              "': uniform applies to scalar targets only");
        }
    } else {
        if (!dispersion_target_is_vector(spec.target)) {
            throw ConfigError("dispersion '" + spec.target +
                              "': normal_vector_cart applies to 3-vector targets only");
        }
        if (spec.std_dev.minCoeff() <= 0.0) {
            throw ConfigError("dispersion '" + spec.target +
                              "': standard deviation components must be positive");
        }
    }
}

}  // namespace

bool dispersion_target_is_vector(const std::string& target) {
    if (target == "spacecraft.mass") {
        return false;
    }
    if (target == "spacecraft.r_CN_N_init" || target == "spacecraft.v_CN_N_init") {
        return true;
    }
    throw ConfigError("dispersion target '" + target +
                      "' is not resolvable (supported: spacecraft.mass, "
                      "spacecraft.r_CN_N_init, spacecraft.v_CN_N_init)");
}

std::vector<double> resolve_target_value(const ScenarioConfig& config,
                                         const std::string& target) {
    if (target == "spacecraft.mass") {
        return {config.spacecraft.mass_kg};
    }

    Eigen::Vector3d r = Eigen::Vector3d::Zero();
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    if (config.orbit) {
        // Nominal initial state comes from the configured orbit around the
        // central body.
        const GravityBody central = create_body(config.gravity.central);
        const RVState rv = elem2rv(central.mu, *config.orbit);
        r = rv.r_N;
        v = rv.v_N;
    }
    if (target == "spacecraft.r_CN_N_init") {
        const Eigen::Vector3d value = config.spacecraft.r_init_m.value_or(r);
        return {value.x(), value.y(), value.z()};
    }
    if (target == "spacecraft.v_CN_N_init") {
        const Eigen::Vector3d value = config.spacecraft.v_init_mps.value_or(v);
        return {value.x(), value.y(), value.z()};
    }
    throw ConfigError("dispersion target '" + target + "' is not resolvable");
}

DispersionSpec parse_dispersion(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() < 3) {
        throw ConfigError("dispersion '" + text + "': expected kind:target:params...");
    }
    DispersionSpec spec;
    spec.target = parts[1];

    if (parts[0] == "uniform") {
        if (parts.size() != 4) {
            throw ConfigError("dispersion '" + text + "': expected uniform:target:lo:hi");
        }
        spec.kind = DispersionSpec::Kind::uniform;
        spec.lo = parse_double(parts[2], "lo");
        spec.hi = parse_double(parts[3], "hi");
    } else if (parts[0] == "normal" || parts[0] == "normal_vector_cart") {
        spec.kind = DispersionSpec::Kind::normal_vector_cart;
        if (parts.size() == 3) {
            spec.std_dev.setConstant(parse_double(parts[2], "std"));
        } else if (parts.size() == 4) {
            spec.mean = parse_triple(parts[2], "mean");
            if (parts[3].find(',') != std::string::npos) {
                spec.std_dev = parse_triple(parts[3], "std");
            } else {
                spec.std_dev.setConstant(parse_double(parts[3], "std"));
            }
        } else {
            throw ConfigError("dispersion '" + text +
                              "': expected normal:target:[mean:]std");
        }
    } else {
        throw ConfigError("dispersion kind '" + parts[0] +
                          "' is not supported (kinds: uniform, normal_vector_cart)");
    }
    validate_dispersion(spec);
    return spec;
}

std::vector<double> sample_dispersion(const DispersionSpec& spec, RngStream& rng,
                                      const ScenarioConfig& base_config) {
    validate_dispersion(spec);
    if (spec.kind == DispersionSpec::Kind::uniform) {
        return {rng.uniform(spec.lo, spec.hi)};
    }
    Eigen::Vector3d mean;
    if (spec.mean) {
        mean = *spec.mean;
    } else {
        const std::vector<double> nominal = resolve_target_value(base_config, spec.target);
        mean = Eigen::Vector3d{nominal[0], nominal[1], nominal[2]};
    }
    Eigen::Vector3d sample;
    for (int axis = 0; axis < 3; ++axis) {
        sample(axis) = mean(axis) + spec.std_dev(axis) * rng.normal();
    }
    return {sample.x(), sample.y(), sample.z()};
}

void apply_dispersion(ScenarioConfig& config, const std::string& target,
                      const std::vector<double>& value) {
    if (target == "spacecraft.mass") {
        config.spacecraft.mass_kg = value.at(0);
        return;
    }
    if (target == "spacecraft.r_CN_N_init") {
        config.spacecraft.r_init_m = Eigen::Vector3d{value.at(0), value.at(1), value.at(2)};
        return;
    }
    if (target == "spacecraft.v_CN_N_init") {
        config.spacecraft.v_init_mps = Eigen::Vector3d{value.at(0), value.at(1), value.at(2)};
        return;
    }
    throw ConfigError("dispersion target '" + target + "' is not resolvable");
}

// ---------------------------------------------------------------------------
// Ensemble execution and archiving
// ---------------------------------------------------------------------------

std::string manifest_path(const std::string& dir) {
    return (fs::path(dir) / "manifest.json").string();
}

namespace {

nlohmann::ordered_json dispersion_to_json(const DispersionSpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] =
        spec.kind == DispersionSpec::Kind::uniform ? "uniform" : "normal_vector_cart";
    j["target"] = spec.target;
    if (spec.kind == DispersionSpec::Kind::uniform) {
        j["lo"] = spec.lo;
        j["hi"] = spec.hi;
    } else {
        if (spec.mean) {
            j["mean"] = {spec.mean->x(), spec.mean->y(), spec.mean->z()};
        } else {
            j["mean"] = nullptr;
        }
        j["std"] = {spec.std_dev.x(), spec.std_dev.y(), spec.std_dev.z()};
    }
    return j;
}

DispersionSpec dispersion_from_json(const nlohmann::json& j) {
    DispersionSpec spec;
    spec.kind = j.at("kind").get<std::string>() == "uniform"
                    ? DispersionSpec::Kind::uniform
                    : DispersionSpec::Kind::normal_vector_cart;
    spec.target = j.at("target").get<std::string>();
    if (spec.kind == DispersionSpec::Kind::uniform) {
        spec.lo = j.at("lo").get<double>();
        spec.hi = j.at("hi").get<double>();
    } else {
        if (!j.at("mean").is_null()) {
            const auto mean = j.at("mean").get<std::vector<double>>();
            spec.mean = Eigen::Vector3d{mean.at(0), mean.at(1), mean.at(2)};
        }
        const auto std_dev = j.at("std").get<std::vector<double>>();
        spec.std_dev = Eigen::Vector3d{std_dev.at(0), std_dev.at(1), std_dev.at(2)};
    }
    return spec;
}

std::string run_dir_name(int index) { return "run_" + std::to_string(index); }

McRunResult execute_one_run(const McPlan& plan, int index) {
    McRunResult result;
    result.index = index;
    result.seed = derive_run_seed(plan.master_seed, index);
    result.status = "ok";

    RngStream rng(result.seed);
    ScenarioConfig config = plan.base_config;
    try {
        for (const DispersionSpec& spec : plan.dispersions) {
            const std::vector<double> value = sample_dispersion(spec, rng, plan.base_config);
            result.sampled[spec.target] = value;
            apply_dispersion(config, spec.target, value);
        }

        const auto scenario = build_scenario(config, plan.kind);
        const OutputBundle outputs =
            scenario->run(config.mode, sec_to_nanos(config.simulation.simulation_time_s));

        const fs::path dir = fs::path(plan.archive_dir) / run_dir_name(index);
        fs::create_directories(dir);
        export_state_csv(outputs, (dir / "outputs.csv").string());
        export_telemetry_jsonl(*scenario, (dir / "telemetry.jsonl").string());
    } catch (const std::exception& e) {
        result.status = "failed";
        result.error = e.what();
    }
    return result;
}

void write_manifest(const McArchive& archive) {
    nlohmann::ordered_json manifest;
    manifest["seed"] = archive.master_seed;
    manifest["count"] = archive.execution_count;
    manifest["dispersions"] = nlohmann::ordered_json::array();
    for (const DispersionSpec& spec : archive.dispersions) {
        manifest["dispersions"].push_back(dispersion_to_json(spec));
    }
    manifest["runs"] = nlohmann::ordered_json::array();
    for (const McRunResult& run : archive.runs) {
        nlohmann::ordered_json j;
        j["index"] = run.index;
        j["seed"] = run.seed;
        j["sampled"] = run.sampled;  // std::map keeps target keys sorted
        j["status"] = run.status;
        if (!run.error.empty()) {
            j["error"] = run.error;
        }
        manifest["runs"].push_back(std::move(j));
    }

    std::ofstream out(manifest_path(archive.dir), std::ios::binary);
    if (!out) {
        throw SimError("cannot write manifest to '" + manifest_path(archive.dir) + "'");
    }
    out << manifest.dump(2) << '\n';
}

}  // namespace

McArchive execute_simulations(const McPlan& plan) {
    if (plan.execution_count < 1) {
        throw ConfigError("execute_simulations: execution_count must be >= 1");
    }
    if (plan.archive_dir.empty()) {
        throw ConfigError("execute_simulations: archive_dir is required");
    }
    std::set<std::string> targets;
    for (const DispersionSpec& spec : plan.dispersions) {
        validate_dispersion(spec);
        if (!targets.insert(spec.target).second) {
            throw ConfigError("execute_simulations: duplicate dispersion target '" +
                              spec.target + "'");
        }
    }

    const fs::path dir(plan.archive_dir);
    if (fs::exists(dir) && !fs::is_empty(dir)) {
        if (!plan.force) {
            throw ConfigError("archive directory '" + plan.archive_dir +
                              "' already exists and is not empty (use --force to overwrite)");
        }
        fs::remove_all(dir);
    }
    fs::create_directories(dir);

    McArchive archive;
    archive.dir = plan.archive_dir;
    archive.master_seed = plan.master_seed;
    archive.execution_count = plan.execution_count;
    archive.dispersions = plan.dispersions;
    archive.runs.resize(plan.execution_count);

    const int workers = std::max(1, plan.workers);
    if (workers == 1) {
        for (int k = 0; k < plan.execution_count; ++k) {
            archive.runs[k] = execute_one_run(plan, k);
        }
    } else {
        // Runs are independent (fresh container + config copy per run), so a
        // simple work-stealing counter keeps results order-independent.
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                while (true) {
                    const int k = next.fetch_add(1);
                    if (k >= plan.execution_count) {
                        return;
                    }
                    archive.runs[k] = execute_one_run(plan, k);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    write_manifest(archive);
    return archive;
}

McArchive load_archive(const std::string& dir) {
    const std::string path = manifest_path(dir);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("no manifest found at '" + path + "'");
    }
    nlohmann::json manifest;
    try {
        in >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("corrupt manifest '" + path + "': " + e.what());
    }

    McArchive archive;
    archive.dir = dir;
    try {
        archive.master_seed = manifest.at("seed").get<std::uint64_t>();
        archive.execution_count = manifest.at("count").get<int>();
        for (const auto& j : manifest.at("dispersions")) {
            archive.dispersions.push_back(dispersion_from_json(j));
        }
        for (const auto& j : manifest.at("runs")) {
            McRunResult run;
            run.index = j.at("index").get<int>();
            run.seed = j.at("seed").get<std::uint64_t>();
            for (const auto& [target, value] : j.at("sampled").items()) {
                run.sampled[target] = value.get<std::vector<double>>();
            }
            run.status = j.at("status").get<std::string>();
            if (j.contains("error")) {
                run.error = j.at("error").get<std::string>();
            }
            archive.runs.push_back(std::move(run));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("corrupt manifest '" + path + "': " + e.what());
    }

    if (static_cast<int>(archive.runs.size()) != archive.execution_count) {
        throw ConfigError("archive integrity error: manifest lists " +
                          std::to_string(archive.runs.size()) + " runs but count is " +
                          std::to_string(archive.execution_count));
    }
    for (const McRunResult& run : archive.runs) {
        if (run.status != "ok") {
            continue;
        }
        const fs::path run_dir = fs::path(dir) / run_dir_name(run.index);
        if (!fs::exists(run_dir / "outputs.csv") || !fs::exists(run_dir / "telemetry.jsonl")) {
            throw ConfigError("archive integrity error: outputs missing for " +
                              run_dir_name(run.index));
        }
    }
    return archive;
}

}  // namespace orbitforge
