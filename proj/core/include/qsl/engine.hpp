#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qsl/rng.hpp"
#include "qsl/types.hpp"

namespace qsl {

/// Binary-partitioning stand-ins for multiway rounds. They sample pivots like
/// the multiway method but split with Hoare partitioning, optionally skipping
/// the second split when it cannot contain the sought rank.
enum class Simulation { kNone, kWaterlooLazy, kYbbLazy, kYbbAtomic };

struct AlgorithmPreset {
  std::string name;
  AdaptivePolicy policy;
  std::size_t base_case_cutoff = 32;
  Simulation simulation = Simulation::kNone;
};

/// Throws std::invalid_argument when the base-case cutoff is too small for
/// the largest sample of the policy.
void validate(const AlgorithmPreset& preset);

struct SelectOptions {
  bool record_rounds = false;
};

struct SelectionResult {
  Key key = 0;
  CostTally tally;
  /// Number of partitioning rounds executed.
  std::size_t depth = 0;
  CostTally base_case;
  /// Per-round tallies (sampling plus partitioning), filled when requested.
  std::vector<CostTally> rounds;
};

/// Selects the m-th smallest key (1-based) of `array`, permuting it in place.
///
/// Each round reads alpha = m / n of the current subproblem, looks up the
/// method and sampling vector in the policy, partitions and continues in the
/// unique segment holding rank m (or stops when m hits a pivot rank).
/// Subproblems smaller than the cutoff are finished by insertion sort.
SelectionResult quickselect(std::span<Key> array, std::size_t m, const AlgorithmPreset& preset, Rng& rng,
                            const SelectOptions& options = {});

SelectionResult quickselect(std::span<Key> array, const RankSpec& spec, const AlgorithmPreset& preset,
                            Rng& rng, const SelectOptions& options = {});

// Presets. Names round-trip through parse_preset.

AlgorithmPreset preset_cqs();
/// Median-of-k classic Quickselect, k odd.
AlgorithmPreset preset_mok(int k);
AlgorithmPreset preset_yqs();
AlgorithmPreset preset_bby();
AlgorithmPreset preset_waterloo();
/// Proportion-from-2: smaller of two sampled keys below the cutoff, larger above.
AlgorithmPreset preset_prop2(double cutoff = 0.5);
/// Sesquickselect with threshold nu in (0, 1/2]; nu = 1/2 is PROP2.
AlgorithmPreset preset_sqs2(double nu);
AlgorithmPreset preset_sqs2();
/// Sesquickselect variants with samples of size k = 3..7.
AlgorithmPreset preset_sqsk(int k);
AlgorithmPreset preset_simulation(Simulation variant);
AlgorithmPreset preset_from_policy(std::string name, AdaptivePolicy policy);

/// Accepts cqs, mok:<k>, yqs, bby, waterloo, prop2[:<cutoff>], sqs2[:<nu>],
/// sqsk:<k>, sim-waterloo-lazy, sim-ybb-lazy, sim-ybb-atomic.
AlgorithmPreset parse_preset(const std::string& name);

}  // namespace qsl
