#pragma once

// Declarative Monte Carlo experiment runners. Each runner draws every trial
// from a stream labeled by (grid index, trial index) only, so results are
// identical no matter how many worker threads execute the trial loop.

#include <cstddef>
#include <string>
#include <vector>

#include "nabundle/sequence.hpp"
#include "nabundle/state.hpp"
#include "nabundle/table.hpp"

namespace nabundle {

enum class ExperimentKind {
  activity,
  gradient,
  similarity,
  convergence,
  serial_position,
  properties,
  filter_demo,
};

const char* experiment_kind_name(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::activity;
  SpaceParams params;                // n_dims, q, p, master seed
  std::size_t k = 7;                 // list length (activity: max summand count)
  std::size_t trials = 100;
  std::vector<double> p_grid;        // empty -> {params.p}
  std::vector<double> q_grid;        // properties only; empty -> {params.q}
  std::size_t m = 10;                // convergence iterations
  double delta = 0.1;                // similarity level
  std::size_t similar_at = 4;        // 1-based list positions
  std::size_t similar_to = 6;
  std::size_t window = 8;            // filter window w
  std::size_t steps = 100;           // filter stream length
  std::size_t repeat_every = 0;      // filter: re-inject step-1 item every R steps (0 = never)
  std::size_t distractors = 0;       // serial position: extra cleanup entries
  std::size_t jobs = 1;              // worker threads for the trial loop
  EtaPolicy eta = EtaPolicy::random_q;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Grids with defaults applied (single-point grid from params when empty).
  std::vector<double> effective_p_grid() const;
  std::vector<double> effective_q_grid() const;

  /// Canonical JSON echo of the experiment-defining fields. Excludes jobs,
  /// which changes scheduling but never results.
  std::string echo_json() const;
};

// Fig-level runners. Column contracts:
//   activity        p,k,empirical_Q,theory_Q,abs_err
//   gradient        position,mean_d_L,mean_d_R,mean_D_L,mean_D_R,stderr
//   similarity      position,baseline_mean,modified_mean,z_score
//   convergence     p,m,mean_d,fitted_rate
//   serial_position position,recall_score,stderr
//   properties      property_id,p,q,statistic,oracle_value,paper_variant,pass
//   filter_demo     step,novelty,recency,left_activity
TrialTable run_activity(const ExperimentConfig& config);
TrialTable run_gradient(const ExperimentConfig& config);
TrialTable run_similarity(const ExperimentConfig& config);
TrialTable run_convergence(const ExperimentConfig& config);
TrialTable run_serial_position(const ExperimentConfig& config);
TrialTable run_properties(const ExperimentConfig& config);
TrialTable run_filter_demo(const ExperimentConfig& config);

/// Dispatches on config.kind.
TrialTable run_experiment(const ExperimentConfig& config);

}  // namespace nabundle
