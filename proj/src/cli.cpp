#include "coxforge/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "coxforge/cox_candidate.hpp"
#include "coxforge/errors.hpp"
#include "coxforge/golden.hpp"
#include "coxforge/invariant_ring.hpp"
#include "coxforge/lattice.hpp"
#include "coxforge/serialization.hpp"

namespace coxforge::cli {

using json::Json;

Config load_config(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("config " + path + " is not valid JSON: " + e.what());
  }
  Config c = std::move(base);
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "grid") c.grid = value.get<int>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "max_cells") c.max_cells = value.get<std::size_t>();
      else if (key == "audit_cells") c.audit_cells = value.get<std::size_t>();
      else if (key == "step_cap") c.caps.step_cap = value.get<int>();
      else if (key == "cokernel_cap") c.caps.cokernel_cap = value.get<std::int64_t>();
      else if (key == "base_case_periods") c.caps.base_case_periods = value.get<int>();
      else throw ParameterError("unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError("config key '" + key + "': " + e.what());
    }
  }
  return c;
}

std::vector<MultiDegree> sample_grid(std::size_t n, int radius, std::size_t max_cells, std::uint64_t seed) {
  if (radius < 0) throw ParameterError("grid radius must be nonnegative");
  if (n == 0) throw ParameterError("grid dimension must be positive");
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(radius) + 1;
  std::uint64_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < n && small; ++i) {
    total *= span;
    small = total <= max_cells;
  }
  std::vector<MultiDegree> cells;
  if (small) {
    MultiDegree d(std::vector<std::int64_t>(n, -radius));
    for (std::uint64_t c = 0; c < total; ++c) {
      cells.push_back(d);
      for (std::size_t i = n; i-- > 0;) {
        if (d[i] < radius) {
          ++d[i];
          break;
        }
        d[i] = -radius;
      }
    }
    return cells;
  }
  // Modulo keeps the sample identical across standard libraries, unlike the distributions.
  std::mt19937_64 rng(seed);
  std::set<std::vector<std::int64_t>> seen;
  while (cells.size() < max_cells) {
    std::vector<std::int64_t> v(n);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % span) - radius;
    if (seen.insert(v).second) cells.emplace_back(std::move(v));
  }
  return cells;
}

namespace {

struct Options {
  std::string command;
  std::string case_text;
  std::string format = "json";
  std::string out_path;
  std::string config_path;
  std::string caps;
  std::string degree;
  int grid = -1;
  bool timings = false;
  bool no_audit = false;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<std::int64_t> parse_ints(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParameterError(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

void apply_caps(const std::string& text, Config& c) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParameterError("--caps expects key=value pairs, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const auto value = parse_ints(item.substr(eq + 1), "cap");
    if (value.size() != 1 || value.front() < 0) throw ParameterError("bad cap value in '" + item + "'");
    if (key == "step") c.caps.step_cap = static_cast<int>(value.front());
    else if (key == "cokernel") c.caps.cokernel_cap = value.front();
    else if (key == "periods") c.caps.base_case_periods = static_cast<int>(value.front());
    else if (key == "cells") c.max_cells = static_cast<std::size_t>(value.front());
    else if (key == "audit_cells") c.audit_cells = static_cast<std::size_t>(value.front());
    else throw ParameterError("unknown cap '" + key + "'");
  }
}

ResolutionGraph load_case(const std::string& text) {
  if (text.size() > 5 && text.substr(text.size() - 5) == ".json") {
    std::ifstream in(text);
    if (!in) throw ParameterError("cannot read graph file " + text);
    try {
      return json::graph_from_json(Json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError("graph file " + text + " is not valid JSON: " + e.what());
    }
  }
  return graph_from_case(text);
}

bool is_standard(const ResolutionGraph& g) { return g.label().rfind("custom", 0) != 0 && !g.label().empty(); }

Family family_of(const ResolutionGraph& g) {
  switch (g.label()[0]) {
    case 'A': return Family::A;
    case 'D': return Family::D;
    case 'E': return Family::E;
    default: return Family::Custom;
  }
}

int rank_of(const ResolutionGraph& g) { return static_cast<int>(g.size()); }

Json cmd_graph(const ResolutionGraph& g) {
  Json j = json::graph_to_json(g);
  const IntegerMatrix im = intersection_matrix(g);
  j["intersection_matrix"] = json::matrix_to_json(im);
  const Grading gr = extended_degree_matrix(g);
  j["variables"] = gr.variables;
  j["degree_matrix"] = json::matrix_to_json(gr.degree_matrix);
  j["determinant"] = determinant(im).str();
  j["negative_definite"] = is_negative_definite(im);
  j["ok"] = true;
  return j;
}

Json cmd_cox(const ResolutionGraph& g) {
  const RingPresentation pres = candidate_presentation(g);
  Json j;
  j["case"] = g.label();
  j["presentation"] = json::presentation_to_json(pres);
  bool ok = true;
  if (is_standard(g) && family_of(g) != Family::A && golden::has_case(g.label())) {
    const AmbientModel model = ambient_model(family_of(g), rank_of(g));
    std::vector<std::string> names;
    for (const auto& gen : model.generators) names.push_back(gen.name);
    Json gens = Json::array();
    for (const auto& gen : model.generators)
      gens.push_back({{"name", gen.name}, {"monomial", format_monomial(gen.monomial, pres.grading.variables)}});
    j["generators"] = gens;
    j["quotient_relations"] = Json::array();
    for (const auto& r : model.quotient_relations) j["quotient_relations"].push_back(format_relation(r, model.generators));
    j["cuts"] = Json::array();
    for (std::size_t c = 0; c < model.cut_equations.size(); ++c) {
      const FactorizationResult f = pullback_factorization(family_of(g), rank_of(g), c);
      Json cj = json::factorization_to_json(f, pres.grading.variables);
      cj["equation"] = format_polynomial(model.cut_equations[c], names);
      if (f.principal) ok = ok && f.matches_candidate;
      j["cuts"].push_back(std::move(cj));
    }
  }
  j["ok"] = ok;
  return j;
}

Json cmd_reduce(const ResolutionGraph& g, const MultiDegree& d, const Config& cfg, bool audit) {
  AuditCaps caps = cfg.caps;
  caps.audit_cokernels = audit;
  return json::trace_to_json(full_equivalence_audit(g, d, caps));
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f) {
  std::vector<T> out(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), count));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = f(i);
    }));
  for (auto& job : jobs) job.get();
  return out;
}

struct CellOutcome {
  bool terminated = false;
  bool basic = false;
  bool measure_monotone = true;
  std::size_t steps = 0;
  std::string resource_error;
};

Json reduction_section(const ResolutionGraph& g, const Config& cfg) {
  const auto cells = sample_grid(g.size(), cfg.grid, cfg.max_cells, cfg.seed);
  const auto outcomes = parallel_map<CellOutcome>(cells.size(), [&](std::size_t i) {
    CellOutcome o;
    try {
      const ReductionTrace nef = reduce_to_nef(cells[i], g, cfg.caps.step_cap);
      const ReductionTrace basic = reduce_nef_to_basic(nef.terminal, g, cfg.caps.step_cap);
      o.terminated = true;
      o.basic = is_basic(basic.terminal, g);
      o.steps = nef.steps.size() + basic.steps.size();
      for (std::size_t k = 1; k < basic.measures.size(); ++k)
        if (basic.measures[k] > basic.measures[k - 1]) o.measure_monotone = false;
    } catch (const StepCapError& e) {
      o.resource_error = e.what();
    }
    return o;
  });
  std::size_t terminated = 0, basic = 0, monotone = 0, steps = 0;
  for (const auto& o : outcomes) {
    terminated += o.terminated;
    basic += o.basic;
    monotone += o.measure_monotone;
    steps = std::max(steps, o.steps);
  }
  const std::size_t n_audit = std::min(cfg.audit_cells, cells.size());
  const auto audits = parallel_map<EquivalenceAudit>(n_audit, [&](std::size_t i) {
    return full_equivalence_audit(g, cells[i], cfg.caps);
  });
  std::size_t audited = 0, agreeing = 0, unaudited = 0, base_cases = 0, base_ok = 0;
  Json failures = Json::array();
  for (const auto& a : audits) {
    for (const auto& s : a.steps) {
      if (!s.unaudited_reason.empty()) {
        ++unaudited;
        continue;
      }
      ++audited;
      agreeing += s.agrees;
    }
    for (const auto& b : a.base_cases) {
      ++base_cases;
      base_ok += b.match;
    }
    if (!a.ok) failures.push_back(json::trace_to_json(a));
  }
  Json j;
  j["grid_radius"] = cfg.grid;
  j["cells"] = cells.size();
  j["terminated"] = terminated;
  j["basic_terminal"] = basic;
  j["measure_monotone"] = monotone;
  j["max_steps"] = steps;
  j["audited_cells"] = n_audit;
  j["audited_steps"] = audited;
  j["agreeing_steps"] = agreeing;
  j["unaudited_steps"] = unaudited;
  j["base_cases"] = base_cases;
  j["base_cases_matching"] = base_ok;
  j["failures"] = failures;
  j["ok"] = terminated == cells.size() && basic == cells.size() && monotone == cells.size() && agreeing == audited &&
            base_ok == base_cases;
  return j;
}

Json counterexample_section(const ResolutionGraph& g, const Config& cfg) {
  const auto& ce = golden::counterexample();
  const RingPresentation pres = candidate_presentation(g);
  ReductionStep step;
  step.kind = StepKind::AddCurve;
  step.curves = {ce.step_node};
  step.degree_before = MultiDegree::unit(g.size(), g.index_of(ce.start_node), ce.start_multiple);
  step.degree_after = step.degree_before + curve_delta(g, step.curves);
  step.expected_cokernel_dim = expected_cokernel_dim(step, g);
  const CokernelResult actual =
      stabilized_cokernel_dimension(pres, cokernel_problem(pres, g, step), cfg.caps.cokernel_cap);
  Json j;
  j["relation"] = format_polynomial(pres.relations.front(), pres.grading.variables);
  j["determinant"] = determinant(intersection_matrix(g)).str();
  j["negative_definite"] = is_negative_definite(intersection_matrix(g));
  j["step"] = {{"kind", to_string(step.kind)},
               {"curves", step.curves},
               {"degree_before", json::degree_to_json(step.degree_before)},
               {"degree_after", json::degree_to_json(step.degree_after)}};
  j["expected_dim"] = *step.expected_cokernel_dim;
  j["actual_dim"] = actual.dimension;
  j["stabilized"] = actual.stabilized;
  j["cap"] = actual.cap;
  const bool fails = actual.dimension != *step.expected_cokernel_dim;
  j["outcome"] = fails ? "rule-fails-as-predicted" : "rule-holds-unexpectedly";
  j["ok"] = fails;
  return j;
}

bool is_counterexample(const ResolutionGraph& g) {
  const auto& br = golden::counterexample().branches;
  std::string label = "custom:";
  for (std::size_t i = 0; i < br.size(); ++i) label += (i ? "," : "") + std::to_string(br[i]);
  return g.label() == label;
}

Json cmd_verify(const ResolutionGraph& g, const Config& cfg, bool timings) {
  Json j;
  j["case"] = g.label();
  j["config"] = {{"grid", cfg.grid},
                 {"seed", cfg.seed},
                 {"max_cells", cfg.max_cells},
                 {"audit_cells", cfg.audit_cells},
                 {"step_cap", cfg.caps.step_cap},
                 {"cokernel_cap", cfg.caps.cokernel_cap},
                 {"base_case_periods", cfg.caps.base_case_periods}};
  Json sections = Json::object();
  Json times = Json::object();
  bool ok = true;
  auto run = [&](const char* name, auto&& body) {
    const auto t0 = Clock::now();
    Json s = body();
    times[name] = ms_since(t0);
    ok = ok && s.value("ok", false);
    sections[name] = std::move(s);
  };
  if (is_counterexample(g)) {
    run("counterexample", [&] { return counterexample_section(g, cfg); });
    j["outcome"] = sections["counterexample"]["outcome"];
  } else {
    if (golden::has_case(g.label()))
      run("invariants", [&] { return json::report_to_json(verify_invariant_table(g)); });
    if (is_standard(g) && family_of(g) != Family::A) run("factorization", [&] { return cmd_cox(g); });
    run("reduction", [&] { return reduction_section(g, cfg); });
  }
  j["sections"] = sections;
  if (timings) j["timings_ms"] = times;
  j["ok"] = ok;
  return j;
}

Json cmd_report(const ResolutionGraph& g) {
  Json j;
  j["case"] = g.label();
  j["graph"] = cmd_graph(g);
  bool ok = true;
  if (golden::has_case(g.label())) {
    j["invariants"] = json::report_to_json(verify_invariant_table(g));
    ok = ok && j["invariants"]["ok"].get<bool>();
  }
  j["cox"] = cmd_cox(g);
  ok = ok && j["cox"]["ok"].get<bool>();
  j["ok"] = ok;
  return j;
}

void render_text(const Json& j, std::ostream& os, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    const bool scalar_array =
        value.is_array() && std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_primitive(); });
    if (value.is_primitive() || scalar_array) {
      os << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    } else if (value.is_object()) {
      os << indent << key << ":\n";
      render_text(value, os, indent + "  ");
    } else {
      os << indent << key << ":\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i].is_object()) {
          os << indent << "  - [" << i << "]\n";
          render_text(value[i], os, indent + "    ");
        } else {
          os << indent << "  - " << value[i].dump() << '\n';
        }
      }
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cox ring verification for du Val singularities", "coxforge"};
  app.require_subcommand(1);
  Options opt;
  auto common = [&](CLI::App* sub) {
    sub->add_option("case,--case", opt.case_text, "A3, D5, E7, custom:2,2,3 or a graph .json file");
    sub->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", opt.out_path, "write the report here instead of stdout");
    sub->add_option("--config", opt.config_path, "JSON config with caps and sampling seed");
    sub->add_option("--caps", opt.caps, "step=N,cokernel=N,periods=N,cells=N,audit_cells=N");
    sub->add_option("--grid", opt.grid, "degree grid radius for verify")->check(CLI::NonNegativeNumber);
    sub->add_flag("--timings", opt.timings, "include per-section wall times");
  };
  for (const char* name : {"graph", "invariants", "cox", "reduce", "verify", "report"}) {
    auto* sub = app.add_subcommand(name);
    common(sub);
    if (std::string(name) == "reduce") {
      sub->add_option("--degree", opt.degree, "comma-separated starting degree")->required();
      sub->add_flag("--no-audit", opt.no_audit, "skip cokernel dimension checks");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "coxforge: " << e.what() << '\n';
    return kUsage;
  }
  for (auto* sub : app.get_subcommands()) opt.command = sub->get_name();
  if (opt.case_text.empty()) {
    err << "coxforge: a case is required (e.g. D4)\n";
    return kUsage;
  }

  Json result;
  try {
    Config cfg;
    cfg.caps.cokernel_cap = default_cokernel_cap();
    if (!opt.config_path.empty()) cfg = load_config(opt.config_path, cfg);
    if (!opt.caps.empty()) apply_caps(opt.caps, cfg);
    if (opt.grid >= 0) cfg.grid = opt.grid;
    const ResolutionGraph g = load_case(opt.case_text);

    if (opt.command == "graph") {
      result = cmd_graph(g);
    } else if (opt.command == "invariants") {
      result = json::report_to_json(verify_invariant_table(g));
    } else if (opt.command == "cox") {
      result = cmd_cox(g);
    } else if (opt.command == "reduce") {
      const auto d = parse_ints(opt.degree, "degree");
      result = cmd_reduce(g, MultiDegree(d), cfg, !opt.no_audit);
    } else if (opt.command == "verify") {
      result = cmd_verify(g, cfg, opt.timings);
    } else {
      result = cmd_report(g);
    }
  } catch (const ResourceError& e) {
    err << "coxforge: resource cap reached: " << e.what() << '\n';
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "coxforge: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "coxforge: internal inconsistency: " << e.what() << '\n';
    return kMismatch;
  }

  std::ostringstream rendered;
  if (opt.format == "text") {
    render_text(result, rendered);
  } else {
    rendered << result.dump(2) << '\n';
  }
  if (opt.out_path.empty()) {
    out << rendered.str();
  } else {
    std::ofstream file(opt.out_path);
    if (!file) {
      err << "coxforge: cannot write " << opt.out_path << '\n';
      return kUsage;
    }
    file << rendered.str();
  }
  return result.value("ok", false) ? kOk : kMismatch;
}

}  // namespace coxforge::cli
