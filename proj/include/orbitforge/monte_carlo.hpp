#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitforge/config.hpp"
#include "orbitforge/scenario.hpp"

namespace orbitforge {

/// Deterministic random stream (splitmix64). Hand-rolled transforms keep
/// draws identical across standard libraries and platforms.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform in [0, 1), 53-bit resolution.
    double next_unit();

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller on two uniform draws.
    double normal();

private:
    std::uint64_t state_;
    bool have_spare_{false};
    double spare_{0.0};
};

/// Per-run seed: a fixed-constant 64-bit mix of (master_seed, run_index).
std::uint64_t derive_run_seed(std::uint64_t master_seed, int run_index);

/// Randomized perturbation of one named scenario parameter.
struct DispersionSpec {
    enum class Kind { uniform, normal_vector_cart };

    Kind kind{Kind::uniform};
    std::string target;  ///< dotted config path, e.g. "spacecraft.mass"

    // uniform
    double lo{0.0};
    double hi{0.0};

    // normal_vector_cart; absent mean = the target's nominal config value
    std::optional<Eigen::Vector3d> mean;
    Eigen::Vector3d std_dev{0.0, 0.0, 0.0};  ///< isotropic input expands to all axes
};

/// CLI mini-grammar:
///   uniform:<target>:<lo>:<hi>
///   normal:<target>:<std>                   (mean = nominal config value)
///   normal:<target>:<mx>,<my>,<mz>:<std>
///   normal:<target>:<mx>,<my>,<mz>:<sx>,<sy>,<sz>
/// "normal_vector_cart" is accepted as an alias for "normal".
DispersionSpec parse_dispersion(const std::string& text);

/// Supported dispersion targets: spacecraft.mass (scalar),
/// spacecraft.r_CN_N_init and spacecraft.v_CN_N_init (3-vectors).
bool dispersion_target_is_vector(const std::string& target);

/// Current (nominal) value of a target in the config parameter tree.
std::vector<double> resolve_target_value(const ScenarioConfig& config,
                                         const std::string& target);

/// Draw one sample; scalar targets give 1 value, vector targets 3.
std::vector<double> sample_dispersion(const DispersionSpec& spec, RngStream& rng,
                                      const ScenarioConfig& base_config);

/// Write a sampled value back into a config copy.
void apply_dispersion(ScenarioConfig& config, const std::string& target,
                      const std::vector<double>& value);

struct McPlan {
    ScenarioKind kind{ScenarioKind::earth_orbit};
    ScenarioConfig base_config;
    int execution_count{1};
    std::string archive_dir;
    std::uint64_t master_seed{0};
    std::vector<DispersionSpec> dispersions;
    int workers{1};
    bool force{false};  ///< overwrite an existing archive directory
};

struct McRunResult {
    int index{0};
    std::uint64_t seed{0};
    std::map<std::string, std::vector<double>> sampled;  ///< target -> value
    std::string status;                                  ///< "ok" | "failed"
    std::string error;
};

struct McArchive {
    std::string dir;
    std::uint64_t master_seed{0};
    int execution_count{0};
    std::vector<DispersionSpec> dispersions;
    std::vector<McRunResult> runs;
};

/// Run the ensemble: per run k the stream is seeded from (master_seed, k),
/// each dispersion is sampled once in declaration order and applied to a
/// fresh config copy, and the scenario outputs are archived under
/// `<dir>/run_<k>/`. The manifest is written last. Results are independent
/// of the worker count.
McArchive execute_simulations(const McPlan& plan);

/// Reload an archive from its manifest and verify run-count consistency and
/// the presence of each successful run's outputs.
McArchive load_archive(const std::string& dir);

/// Manifest path helper: `<dir>/manifest.json`.
std::string manifest_path(const std::string& dir);

}  // namespace orbitforge
