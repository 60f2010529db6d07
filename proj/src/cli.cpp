#include "nabundle/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nabundle/csv.hpp"
#include "nabundle/ops.hpp"
#include "nabundle/rng.hpp"
#include "nabundle/state.hpp"

namespace nabundle::cli {

namespace {

std::string format_scalar(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Shared storage for every experiment subcommand; only the one subcommand
// that actually parses writes here.
struct RawOptions {
  ExperimentConfig config;
  std::string out_path;
  std::string config_path;
  std::string eta_name = "random";
};

const auto kOpenUnit = CLI::Validator(
    [](std::string& s) {
      try {
        const double v = std::stod(s);
        if (v > 0.0 && v < 1.0) return std::string{};
      } catch (...) {
      }
      return std::string("value must lie in the open interval (0,1)");
    },
    "FLOAT in (0,1)", "OPEN_UNIT");

void add_common_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--n", raw.config.params.n_dims, "vector length N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--q", raw.config.params.q, "base activity of fresh states")
      ->check(kOpenUnit)
      ->capture_default_str();
  sub->add_option("--p", raw.config.params.p, "bundling noise")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--seed", raw.config.params.seed,
                  "master seed (required; config file may supply it)");
  sub->add_option("--trials", raw.config.trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--jobs", raw.config.jobs,
                  "worker threads for the trial loop (NABUNDLE_JOBS as fallback)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--eta", raw.eta_name, "initial state: random | zeros")
      ->check(CLI::IsMember({"random", "zeros"}))
      ->capture_default_str();
  sub->add_option("--out", raw.out_path, "CSV output path (default: stdout)");
  sub->add_option("--config", raw.config_path,
                  "flat JSON config file; flags win on conflict");
}

void add_k_option(CLI::App* sub, RawOptions& raw, const char* help) {
  sub->add_option("--k", raw.config.k, help)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_p_grid_option(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--p-grid", raw.config.p_grid,
                  "comma-separated p values (default: just --p)")
      ->delimiter(',');
}

// Applies one config-file key. Returns false if the key does not name a flag
// of the parsed subcommand.
bool apply_config_key(const std::string& key, const nlohmann::json& value,
                      RawOptions& raw, const std::set<std::string>& legal) {
  if (!legal.count(key)) return false;
  auto as_size = [&](const char* what) -> std::size_t {
    if (!value.is_number_unsigned() && !value.is_number_integer()) {
      throw UsageError(std::string("config key '") + what + "' must be an integer");
    }
    const auto v = value.get<long long>();
    if (v < 0) throw UsageError(std::string("config key '") + what + "' must be >= 0");
    return static_cast<std::size_t>(v);
  };
  auto as_real = [&](const char* what) -> double {
    if (!value.is_number()) {
      throw UsageError(std::string("config key '") + what + "' must be a number");
    }
    return value.get<double>();
  };
  auto as_grid = [&](const char* what) -> std::vector<double> {
    if (value.is_array()) return value.get<std::vector<double>>();
    if (value.is_string()) {
      std::vector<double> grid;
      std::stringstream ss(value.get<std::string>());
      std::string cell;
      while (std::getline(ss, cell, ',')) {
        try {
          grid.push_back(std::stod(cell));
        } catch (...) {
          throw UsageError(std::string("config key '") + what +
                           "': cannot parse '" + cell + "' as a number");
        }
      }
      return grid;
    }
    throw UsageError(std::string("config key '") + what +
                     "' must be an array or comma string");
  };

  if (key == "n") raw.config.params.n_dims = as_size("n");
  else if (key == "q") raw.config.params.q = as_real("q");
  else if (key == "p") raw.config.params.p = as_real("p");
  else if (key == "seed") {
    if (!value.is_number_unsigned() && !value.is_number_integer()) {
      throw UsageError("config key 'seed' must be an integer");
    }
    raw.config.params.seed = value.get<std::uint64_t>();
  } else if (key == "k") raw.config.k = as_size("k");
  else if (key == "trials") raw.config.trials = as_size("trials");
  else if (key == "jobs") raw.config.jobs = as_size("jobs");
  else if (key == "eta") {
    if (!value.is_string()) throw UsageError("config key 'eta' must be a string");
    raw.eta_name = value.get<std::string>();
    if (raw.eta_name != "random" && raw.eta_name != "zeros") {
      throw UsageError("config key 'eta' must be 'random' or 'zeros'");
    }
  } else if (key == "out") {
    if (!value.is_string()) throw UsageError("config key 'out' must be a string");
    raw.out_path = value.get<std::string>();
  } else if (key == "p-grid") raw.config.p_grid = as_grid("p-grid");
  else if (key == "q-grid") raw.config.q_grid = as_grid("q-grid");
  else if (key == "m") raw.config.m = as_size("m");
  else if (key == "delta") raw.config.delta = as_real("delta");
  else if (key == "similar-at") raw.config.similar_at = as_size("similar-at");
  else if (key == "similar-to") raw.config.similar_to = as_size("similar-to");
  else if (key == "window") raw.config.window = as_size("window");
  else if (key == "steps") raw.config.steps = as_size("steps");
  else if (key == "repeat-every") raw.config.repeat_every = as_size("repeat-every");
  else if (key == "distractors") raw.config.distractors = as_size("distractors");
  else return false;
  return true;
}

}  // namespace

Invocation parse_args(const std::vector<std::string>& args) {
  RawOptions raw;
  OpRequest op;

  CLI::App app{"Non-associative stochastic bundling over binary hypervectors"};
  app.name("nabundle");
  app.require_subcommand(0, 1);

  struct SubInfo {
    CLI::App* sub;
    ExperimentKind kind;
  };
  std::vector<SubInfo> subs;
  auto experiment_sub = [&](ExperimentKind kind, const char* help) {
    CLI::App* sub = app.add_subcommand(experiment_kind_name(kind), help);
    add_common_options(sub, raw);
    subs.push_back({sub, kind});
    return sub;
  };

  {
    CLI::App* sub = experiment_sub(ExperimentKind::activity,
                                   "mean bundle activity vs summand count");
    add_k_option(sub, raw, "maximum summand count (initial state counts as the first)");
    add_p_grid_option(sub, raw);
  }
  {
    CLI::App* sub = experiment_sub(ExperimentKind::gradient,
                                   "per-position distances to the L and R bundles");
    add_k_option(sub, raw, "list length");
  }
  {
    CLI::App* sub = experiment_sub(
        ExperimentKind::similarity,
        "L-profile of a list vs the same list with one item made similar to another");
    add_k_option(sub, raw, "list length");
    sub->add_option("--delta", raw.config.delta, "similarity level (flip probability)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--similar-at", raw.config.similar_at,
                    "1-based position that gets replaced")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--similar-to", raw.config.similar_to,
                    "1-based position the replacement resembles")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  {
    CLI::App* sub = experiment_sub(ExperimentKind::convergence,
                                   "distance to y while repeatedly bundling y in");
    sub->add_option("--m", raw.config.m, "iteration count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_p_grid_option(sub, raw);
  }
  {
    CLI::App* sub = experiment_sub(ExperimentKind::serial_position,
                                   "recall score per list position (cleanup retrieval)");
    add_k_option(sub, raw, "list length");
    sub->add_option("--distractors", raw.config.distractors,
                    "extra cleanup entries beyond the list items")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }
  {
    CLI::App* sub = experiment_sub(ExperimentKind::properties,
                                   "algebraic property suite over a (p,q) grid");
    add_p_grid_option(sub, raw);
    sub->add_option("--q-grid", raw.config.q_grid,
                    "comma-separated q values (default: just --q)")
        ->delimiter(',');
  }
  {
    CLI::App* sub = experiment_sub(ExperimentKind::filter_demo,
                                   "online novelty/recency filter over a state stream");
    sub->add_option("--window", raw.config.window, "right-bundle window size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--steps", raw.config.steps, "stream length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--repeat-every", raw.config.repeat_every,
                    "re-inject the first item every R steps (0 = never)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }

  CLI::App* op_sub = app.add_subcommand(
      "op", "evaluate one operation on literal bit-strings");
  op_sub->add_option("name", op.name, "operation")
      ->required()
      ->check(CLI::IsMember({"bind", "bundle", "hamming", "jaccard", "global-distance"}));
  op_sub->add_option("a", op.a, "first bit-string operand")->required();
  op_sub->add_option("b", op.b, "second bit-string operand")->required();
  op_sub->add_option("--p", op.p, "bundling noise")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  op_sub->add_option("--ref-q", op.ref_q, "reference activity for global-distance")
      ->check(kOpenUnit)
      ->capture_default_str();
  op_sub->add_option("--seed", op.seed, "coin stream seed for bundle")
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("nabundle");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    throw HelpRequested{parsed.empty() ? app.help() : parsed.front()->help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n\n" + app.help());
  }

  const auto parsed = app.get_subcommands();
  if (parsed.empty()) {
    throw UsageError("a subcommand is required\n\n" + app.help());
  }

  Invocation inv;
  if (parsed.front() == op_sub) {
    inv.action = Invocation::Action::op;
    inv.op = op;
    return inv;
  }

  CLI::App* sub = parsed.front();
  ExperimentKind kind = ExperimentKind::activity;
  for (const auto& info : subs) {
    if (info.sub == sub) kind = info.kind;
  }
  raw.config.kind = kind;

  bool seed_given = sub->count("--seed") > 0;
  bool jobs_given = sub->count("--jobs") > 0;
  if (!raw.config_path.empty()) {
    std::ifstream in(raw.config_path);
    if (!in) throw UsageError("cannot read config file: " + raw.config_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config file " + raw.config_path + ": " + e.what());
    }
    if (!doc.is_object()) {
      throw UsageError("config file must hold a flat JSON object");
    }
    std::set<std::string> legal;
    for (const CLI::Option* o : sub->get_options()) {
      for (const auto& lname : o->get_lnames()) legal.insert(lname);
    }
    for (const auto& [key, value] : doc.items()) {
      // Legality first: App::count throws on names it has never seen.
      if (!legal.count(key)) {
        throw UsageError("unknown config key: '" + key + "' (not a flag of subcommand '" +
                         sub->get_name() + "')");
      }
      if (sub->count("--" + key) > 0) continue;  // flags win
      if (!apply_config_key(key, value, raw, legal)) {
        throw UsageError("unknown config key: '" + key + "' (not a flag of subcommand '" +
                         sub->get_name() + "')");
      }
      if (key == "seed") seed_given = true;
      if (key == "jobs") jobs_given = true;
    }
  }
  if (!seed_given) {
    throw UsageError("--seed is required for experiment subcommands "
                     "(pass the flag or put \"seed\" in the config file)");
  }
  if (!jobs_given) {
    if (const char* env = std::getenv("NABUNDLE_JOBS")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0' || v < 1) {
        throw UsageError("NABUNDLE_JOBS must be a positive integer, got '" +
                         std::string(env) + "'");
      }
      raw.config.jobs = static_cast<std::size_t>(v);
    }
  }
  raw.config.eta = raw.eta_name == "zeros" ? EtaPolicy::zeros : EtaPolicy::random_q;

  try {
    raw.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  inv.action = Invocation::Action::experiment;
  inv.config = raw.config;
  inv.out_path = raw.out_path;
  return inv;
}

namespace {

int run_op(const OpRequest& op, std::ostream& out) {
  const State a = State::from_bit_string(op.a);
  const State b = State::from_bit_string(op.b);
  if (a.dims() != b.dims()) {
    throw UsageError("operand lengths differ: " + std::to_string(a.dims()) +
                     " vs " + std::to_string(b.dims()));
  }
  if (op.name == "bind") {
    out << bind(a, b).to_bit_string() << "\n";
  } else if (op.name == "bundle") {
    RandomStream stream(op.seed, 0);
    out << bundle(a, b, op.p, stream).to_bit_string() << "\n";
  } else if (op.name == "hamming") {
    out << format_scalar(hamming(a, b)) << "\n";
  } else if (op.name == "jaccard") {
    out << format_scalar(jaccard(a, b)) << "\n";
  } else {
    out << format_scalar(global_distance(a, b, op.ref_q)) << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (inv.action == Invocation::Action::op) {
      return run_op(inv.op, out);
    }
    for (const auto& warning : inv.config.params.range_warnings()) {
      err << "warning: " << warning << "\n";
    }
    TrialTable table = run_experiment(inv.config);
    if (inv.out_path.empty()) {
      emit_csv(table, out);
    } else {
      emit_csv(table, inv.out_path);
    }
    err << "# " << experiment_kind_name(inv.config.kind) << ": "
        << table.rows.size() << " rows, " << inv.config.trials << " trials, wall "
        << format_scalar(table.wall_seconds) << " s";
    if (!inv.out_path.empty()) err << " -> " << inv.out_path;
    err << "\n";
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nabundle::cli
