#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgs/analysis.hpp"
#include "pgs/cli.hpp"
#include "pgs/model.hpp"
#include "pgs/optimizer.hpp"
#include "pgs/statevector.hpp"

namespace pgs::cli {

namespace {

using nlohmann::json;

struct CommonOptions {
  OutputFormat format = OutputFormat::Text;
  std::string output_path;
};

struct OptimizeOptions {
  std::string k_list;
};

struct ScheduleOptions {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  bool exact = false;
  double threshold = kDefaultSuccessThreshold;
};

struct SimulateOptions {
  std::uint64_t n = 0;
  std::uint64_t k = 1;
  std::uint64_t j1 = 0;
  std::uint64_t j2 = 0;
  bool no_trailing = false;
  std::string engine = "reduced";
  std::optional<std::uint64_t> target;
  std::string emit_state;
  std::optional<std::uint64_t> state_cap;
};

struct CompareOptions {
  std::optional<std::uint64_t> n;
  std::string k_list = "2..30";
};

struct BoundOptions {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  static const std::map<std::string, OutputFormat> kFormats = {
      {"text", OutputFormat::Text}, {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}};
  cmd->add_option("--format", common.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  cmd->add_option("--output", common.output_path, "Write the report to PATH instead of stdout");
}

json k_json(BlockCount k) {
  return k.is_infinite() ? json("inf") : json(k.value());
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string emit_json(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- optimize

std::string cmd_optimize(const OptimizeOptions& opt, OutputFormat format) {
  const auto ks = parse_k_list(opt.k_list, true);
  std::vector<OptimalParameters> rows;
  rows.reserve(ks.size());
  for (BlockCount k : ks) rows.push_back(asymptotic_optimum(k));

  std::ostringstream os;
  switch (format) {
    case OutputFormat::Text:
      os << pad("K", 10) << pad("alpha", 12) << pad("eta", 12) << "c\n";
      for (const auto& r : rows) {
        os << pad(r.n_blocks.to_string(), 10) << pad(format_text(r.alpha), 12)
           << pad(format_text(r.eta), 12) << format_text(r.c) << '\n';
      }
      break;
    case OutputFormat::Csv:
      os << "K,alpha,eta,c\n";
      for (const auto& r : rows) {
        os << r.n_blocks.to_string() << ',' << format_exact(r.alpha) << ','
           << format_exact(r.eta) << ',' << format_exact(r.c) << '\n';
      }
      break;
    case OutputFormat::Json: {
      auto row_json = [](const OptimalParameters& r) {
        return json{{"K", k_json(r.n_blocks)}, {"alpha", r.alpha}, {"eta", r.eta}, {"c", r.c}};
      };
      if (rows.size() == 1) return emit_json(row_json(rows.front()));
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(row_json(r));
      return emit_json(arr);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- schedule

struct ScheduleLine {
  std::string mode;
  Schedule schedule;
  double block_success = 0.0;
  std::optional<double> threshold;
};

std::string cmd_schedule(const ScheduleOptions& opt, OutputFormat format) {
  const Geometry g = make_geometry(opt.n, opt.k);
  std::vector<ScheduleLine> lines;
  const Schedule asym = asymptotic_schedule(g);
  lines.push_back({"asymptotic", asym, block_success_probability(run_schedule(g, asym), g), {}});
  if (opt.exact) {
    const Schedule best = optimal_exact_schedule(g, opt.threshold);
    lines.push_back(
        {"exact", best, block_success_probability(run_schedule(g, best), g), opt.threshold});
  }

  std::ostringstream os;
  switch (format) {
    case OutputFormat::Text:
      os << "N=" << g.n_items << " K=" << g.n_blocks << " b=" << g.block_size << '\n';
      for (const auto& l : lines) {
        os << l.mode;
        if (l.threshold) os << " (threshold " << format_text(*l.threshold) << ")";
        os << ": j1=" << l.schedule.j1 << " j2=" << l.schedule.j2
           << " S=" << l.schedule.queries
           << " block_success=" << format_text(l.block_success) << '\n';
      }
      break;
    case OutputFormat::Csv:
      os << "mode,N,K,j1,j2,trailing_global,queries,block_success,threshold\n";
      for (const auto& l : lines) {
        os << l.mode << ',' << g.n_items << ',' << g.n_blocks << ',' << l.schedule.j1 << ','
           << l.schedule.j2 << ',' << (l.schedule.trailing_global ? "true" : "false") << ','
           << l.schedule.queries << ',' << format_exact(l.block_success) << ','
           << (l.threshold ? format_exact(*l.threshold) : "") << '\n';
      }
      break;
    case OutputFormat::Json: {
      json j = {{"N", g.n_items}, {"K", g.n_blocks}, {"b", g.block_size}};
      for (const auto& l : lines) {
        json s = {{"j1", l.schedule.j1},
                  {"j2", l.schedule.j2},
                  {"trailing_global", l.schedule.trailing_global},
                  {"queries", l.schedule.queries},
                  {"block_success", l.block_success}};
        if (l.threshold) s["threshold"] = *l.threshold;
        j[l.mode] = s;
      }
      return emit_json(j);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- simulate

std::string cmd_simulate(const SimulateOptions& opt, OutputFormat format) {
  const Geometry g = make_geometry(opt.n, opt.k);
  const Schedule sch = make_schedule(opt.j1, opt.j2, !opt.no_trailing);
  const bool full = opt.engine == "full";
  if (!full && (opt.target || !opt.emit_state.empty() || opt.state_cap)) {
    throw Error(ErrorKind::InvalidArgument,
                "--target, --emit-state and --state-cap apply only to --engine full");
  }

  ReducedState state;
  if (full) {
    const FullState fs = sv_run_schedule(g, opt.target.value_or(0), sch,
                                         opt.state_cap.value_or(kDefaultAmplitudeCap));
    state = sv_reduce(fs).state;
    if (!opt.emit_state.empty()) write_state(opt.emit_state, fs);
  } else {
    state = run_schedule(g, sch);
  }
  const double block = block_success_probability(state, g);
  const double item = item_success_probability(state);

  const std::vector<std::pair<std::string, double>> fields = {
      {"amp_target", state.amp_target}, {"amp_ntt", state.amp_ntt},
      {"amp_nb", state.amp_nb},         {"block_success", block},
      {"item_success", item}};

  std::ostringstream os;
  switch (format) {
    case OutputFormat::Text:
      os << "N=" << g.n_items << " K=" << g.n_blocks << " j1=" << sch.j1 << " j2=" << sch.j2
         << " trailing_global=" << (sch.trailing_global ? "true" : "false")
         << " queries=" << sch.queries << '\n';
      for (const auto& [name, value] : fields) os << name << '=' << format_text(value) << '\n';
      break;
    case OutputFormat::Csv:
      os << "N,K,j1,j2,trailing_global,queries";
      for (const auto& f : fields) os << ',' << f.first;
      os << '\n'
         << g.n_items << ',' << g.n_blocks << ',' << sch.j1 << ',' << sch.j2 << ','
         << (sch.trailing_global ? "true" : "false") << ',' << sch.queries;
      for (const auto& f : fields) os << ',' << format_exact(f.second);
      os << '\n';
      break;
    case OutputFormat::Json: {
      json j = {{"N", g.n_items},
                {"K", g.n_blocks},
                {"j1", sch.j1},
                {"j2", sch.j2},
                {"trailing_global", sch.trailing_global},
                {"queries", sch.queries}};
      for (const auto& [name, value] : fields) j[name] = value;
      return emit_json(j);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- compare

std::string cmd_compare(const CompareOptions& opt, OutputFormat format) {
  const auto ks = parse_k_list(opt.k_list, false);
  std::vector<ComparisonRow> rows;
  rows.reserve(ks.size());
  for (BlockCount k : ks) rows.push_back(comparison_row(k.value(), opt.n));

  std::ostringstream os;
  switch (format) {
    case OutputFormat::Text:
      os << pad("K", 8) << pad("s_coeff", 12) << pad("r_coeff", 12) << pad("p_interrupted", 15)
         << pad("c", 12) << "note\n";
      for (const auto& r : rows) {
        std::string line = pad(std::to_string(r.n_blocks), 8) + pad(format_text(r.s_coeff), 12) +
                           pad(format_text(r.r_coeff), 12) +
                           pad(format_text(r.p_interrupted), 15) + pad(format_text(r.c), 12) +
                           r.note;
        line.erase(line.find_last_not_of(' ') + 1);
        os << line << '\n';
      }
      break;
    case OutputFormat::Csv:
      os << "K,s_coeff,r_coeff,p_interrupted,c,note\n";
      for (const auto& r : rows) {
        os << r.n_blocks << ',' << format_exact(r.s_coeff) << ',' << format_exact(r.r_coeff)
           << ',' << format_exact(r.p_interrupted) << ',' << format_exact(r.c) << ','
           << csv_field(r.note) << '\n';
      }
      break;
    case OutputFormat::Json: {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"K", r.n_blocks},
                       {"s_coeff", r.s_coeff},
                       {"r_coeff", r.r_coeff},
                       {"p_interrupted", r.p_interrupted},
                       {"c", r.c},
                       {"note", r.note}});
      }
      return emit_json(arr);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- bound

std::string cmd_bound(const BoundOptions& opt, OutputFormat format) {
  if (opt.k < 2) throw Error(ErrorKind::BadK, "bound needs K >= 2");
  const Geometry g = make_geometry(opt.n, opt.k);
  const auto opt_params = asymptotic_optimum(g.n_blocks);
  const double asymptotic_s =
      std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(g.n_items)) +
      (opt_params.alpha - opt_params.eta) * std::sqrt(static_cast<double>(g.block_size));
  const Schedule achieved = asymptotic_schedule(g);

  const std::vector<std::pair<std::string, double>> fields = {
      {"basic", lower_bound_queries(g, BoundVariant::Basic)},
      {"tighter", lower_bound_queries(g, BoundVariant::Tighter)},
      {"alpha_exact", lower_bound_queries(g, BoundVariant::AlphaExact)},
      {"asymptotic_s", asymptotic_s}};

  std::ostringstream os;
  switch (format) {
    case OutputFormat::Text:
      os << "N=" << g.n_items << " K=" << g.n_blocks << " b=" << g.block_size << '\n';
      for (const auto& [name, value] : fields) os << name << '=' << format_text(value) << '\n';
      os << "achieved=" << achieved.queries << '\n';
      break;
    case OutputFormat::Csv:
      os << "N,K,basic,tighter,alpha_exact,asymptotic_s,achieved\n"
         << g.n_items << ',' << g.n_blocks;
      for (const auto& f : fields) os << ',' << format_exact(f.second);
      os << ',' << achieved.queries << '\n';
      break;
    case OutputFormat::Json: {
      json j = {{"N", g.n_items}, {"K", g.n_blocks}, {"b", g.block_size}};
      for (const auto& [name, value] : fields) j[name] = value;
      j["achieved"] = achieved.queries;
      return emit_json(j);
    }
  }
  return os.str();
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible: return kInfeasible;
    case ErrorKind::CapExceeded: return kResourceCap;
    default: return kInvalidArguments;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial search simulator and schedule optimizer", "pgs"};
  app.require_subcommand(1);

  CommonOptions common;
  OptimizeOptions optimize;
  ScheduleOptions schedule;
  SimulateOptions simulate;
  CompareOptions compare;
  BoundOptions bound;

  auto* opt_cmd = app.add_subcommand("optimize", "Optimal (alpha, eta, c) per block count");
  opt_cmd->add_option("--k", optimize.k_list, "Block counts, e.g. 2..5,inf")->required();
  add_common(opt_cmd, common);

  auto* sch_cmd = app.add_subcommand("schedule", "Iteration schedule for a database");
  sch_cmd->add_option("--n", schedule.n, "Database size N")->required();
  sch_cmd->add_option("--k", schedule.k, "Block count K")->required();
  auto* exact_flag = sch_cmd->add_flag("--exact", schedule.exact, "Also run the exhaustive search");
  sch_cmd->add_option("--threshold", schedule.threshold, "Block success target for --exact")
      ->needs(exact_flag);
  add_common(sch_cmd, common);

  auto* sim_cmd = app.add_subcommand("simulate", "Run a schedule and report amplitudes");
  sim_cmd->add_option("--n", simulate.n, "Database size N")->required();
  sim_cmd->add_option("--k", simulate.k, "Block count K");
  sim_cmd->add_option("--j1", simulate.j1, "Leading global iterations");
  sim_cmd->add_option("--j2", simulate.j2, "Local iterations");
  sim_cmd->add_flag("--no-trailing", simulate.no_trailing, "Omit the final global iteration");
  sim_cmd->add_option("--engine", simulate.engine, "reduced or full")
      ->check(CLI::IsMember({"reduced", "full"}));
  sim_cmd->add_option("--target", simulate.target, "Target index (full engine)");
  sim_cmd->add_option("--emit-state", simulate.emit_state, "Write PGSV dump (full engine)");
  sim_cmd->add_option("--state-cap", simulate.state_cap, "Amplitude cap (full engine)");
  add_common(sim_cmd, common);

  auto* cmp_cmd = app.add_subcommand("compare", "Partial search vs random pick coefficients");
  cmp_cmd->add_option("--n", compare.n, "Database size N (annotates non-divisors)");
  cmp_cmd->add_option("--k", compare.k_list, "Block counts, e.g. 2..30");
  add_common(cmp_cmd, common);

  auto* bnd_cmd = app.add_subcommand("bound", "Lower bounds on the query count");
  bnd_cmd->add_option("--n", bound.n, "Database size N")->required();
  bnd_cmd->add_option("--k", bound.k, "Block count K")->required();
  add_common(bnd_cmd, common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidArguments;
  }

  try {
    std::string report;
    if (opt_cmd->parsed()) {
      report = cmd_optimize(optimize, common.format);
    } else if (sch_cmd->parsed()) {
      report = cmd_schedule(schedule, common.format);
    } else if (sim_cmd->parsed()) {
      report = cmd_simulate(simulate, common.format);
    } else if (cmp_cmd->parsed()) {
      report = cmd_compare(compare, common.format);
    } else {
      report = cmd_bound(bound, common.format);
    }

    if (common.output_path.empty()) {
      out << report;
    } else {
      std::ofstream file(common.output_path, std::ios::binary);
      if (!file || !(file << report)) {
        throw Error(ErrorKind::Io, "cannot write " + common.output_path);
      }
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kOk;
}

}  // namespace pgs::cli
