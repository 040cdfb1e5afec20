#include "cli.hpp"

#include "normality/digits.hpp"
#include "normality/errors.hpp"
#include "normality/freq.hpp"
#include "normality/hull.hpp"
#include "normality/ideals.hpp"
#include "normality/json.hpp"
#include "normality/simplex.hpp"
#include "normality/summability.hpp"
#include "normality/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace normality::cli {

namespace {

const std::vector<std::string> kCommands = {"expand", "freq",    "simplex", "synth", "witness",
                                            "gamma",  "st-check", "core",   "demo"};

struct Options {
  std::string spec;
  std::string matrix;
  std::string target;
  std::string plan;
  std::string trajectory;
  std::string out;
  std::string mode = "float";
  std::string ideal = "density";
  std::string horizon;
  std::string horizons;
  std::string n;
  std::string demo;
  unsigned k = 1;
  unsigned b = 2;
  std::uint64_t max_den = 8;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps;
  double threshold = 0.05;
  std::uint64_t rows = 1000;
  std::uint64_t cols = 100;
  double tol = 1e-6;
  std::uint64_t min_recurrence = 10;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

/// "1000000", "1e6", "2.5e3"; must be a positive integer.
std::uint64_t parse_count(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError(std::string(what) + ": '" + text + "' is not a number");
  }
  if (used != text.size() || !(value >= 1.0) || value > 9007199254740992.0 || std::floor(value) != value) {
    throw DomainError(std::string(what) + ": expected a positive integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(value);
}

std::uint64_t count_or(const std::string& text, const char* what, std::uint64_t fallback) {
  return text.empty() ? fallback : parse_count(text, what);
}

std::vector<std::uint64_t> parse_counts(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_count(item, what));
  }
  if (out.empty()) throw DomainError(std::string(what) + ": empty list");
  return out;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw DomainError(std::string("missing required flag ") + flag);
}

bool rational_mode(const Options& o) {
  if (o.mode != "float" && o.mode != "rational") throw DomainError("--mode must be rational or float");
  return o.mode == "rational";
}

void float_only(const Options& o, const char* command) {
  if (rational_mode(o)) throw DomainError(std::string(command) + " supports float mode only");
}

DigitStream load_stream(const Options& o) {
  require(o.spec, "--spec");
  json j = read_json_file(o.spec);
  if (o.seed && j.is_object() && j.value("kind", "") == "random") j["seed"] = *o.seed;
  return stream_from_json(j);
}

std::optional<std::uint64_t> stream_seed(const DigitStream& s) {
  if (const auto* r = std::get_if<RandomSource>(&s.source())) return r->seed;
  return std::nullopt;
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::optional<Trajectory> traj;
  std::string line;
  std::uint64_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const char c = line.front();
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.')) continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        fields.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw SchemaError("'" + path + "': bad number '" + cell + "'");
      }
    }
    ++row;
    std::uint64_t index = row;
    std::span<const double> values(fields);
    if (fields.size() >= 2) {
      index = static_cast<std::uint64_t>(fields[0]);
      values = values.subspan(1);
    }
    if (!traj) traj.emplace(values.size());
    if (values.size() != traj->dim()) throw SchemaError("'" + path + "': ragged rows");
    traj->push_back(index, values);
  }
  if (!traj) throw SchemaError("'" + path + "': no data rows");
  return *traj;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return path_.empty() ? fallback_ : file_; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failed for '" + (path_.empty() ? std::string("stdout") : path_) + "'");
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ofstream file_;
};

void emit_json(const Options& o, std::ostream& out, const json& report) {
  Sink sink(o.out, out);
  sink.stream() << report.dump(2) << '\n';
  sink.finish();
}

int cmd_expand(const Options& o, std::ostream& out) {
  const auto stream = load_stream(o);
  const auto n = parse_count(!o.n.empty() ? o.n : o.horizon.empty() ? "100" : o.horizon, "--n");
  const auto digits = stream.take(n);
  Sink sink(o.out, out);
  auto& os = sink.stream();
  os << "n,digit\n";
  for (std::size_t i = 0; i < digits.size(); ++i) os << i + 1 << ',' << static_cast<unsigned>(digits[i]) << '\n';
  sink.finish();
  return kOk;
}

int cmd_freq(const Options& o, std::ostream& out) {
  const auto stream = load_stream(o);
  const bool exact = rational_mode(o);
  const auto horizons = !o.horizons.empty() ? parse_counts(o.horizons, "--horizons")
                                            : std::vector<std::uint64_t>{count_or(o.horizon, "--horizon", 1000)};
  const auto vectors = freq_trajectory(stream, o.k, horizons);
  const StringIndex index(stream.base(), o.k);
  Sink sink(o.out, out);
  auto& os = sink.stream();
  os << 'n';
  for (const auto& label : index.labels()) os << ',' << label;
  os << '\n';
  for (const auto& v : vectors) {
    os << v.n;
    for (std::size_t i = 0; i < v.counts.size(); ++i) {
      os << ',' << (exact ? format_rational(v.exact(i)) : fmt(v.value(i)));
    }
    os << '\n';
  }
  sink.finish();
  return kOk;
}

int cmd_simplex_enumerate(const Options& o, std::ostream& out) {
  const bool exact = rational_mode(o);
  const auto points = enumerate_rationals(o.b, o.k, o.max_den);
  json list = json::array();
  for (const auto& p : points) {
    json j = point_to_json(p);
    if (!exact) j["values"] = p.values();
    list.push_back(j);
  }
  json body = {{"base", o.b}, {"k", o.k}, {"max_den", o.max_den}, {"count", points.size()}, {"points", list}};
  emit_json(o, out, make_report({"simplex-enumerate", o.mode, std::nullopt}, body));
  return kOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
  float_only(o, "synth");
  require(o.target, "--target");
  const auto target = point_from_json(read_json_file(o.target));
  const auto horizon = count_or(o.horizon, "--horizon", 100000);
  const auto stream = synthesize(target);
  const auto graph = debruijn_multigraph(target);
  const auto components = graph.components();

  json body = {{"target", point_to_json(target)},
               {"stream", stream_to_json(stream)},
               {"denominator", graph.denominator},
               {"components", components.size()},
               {"horizon", horizon}};
  if (components.size() == 1) {
    const auto word = eulerian_word(graph, components.front());
    body["word"] = format_word(word, target.base);
    const std::uint64_t period = word.size();
    if (horizon >= period) {
      const std::uint64_t n = horizon / period * period;
      const auto v = freq_vector(stream, target.k, n);
      body["exact_at"] = n;
      body["exact_match"] = v.exact_entries() == target.entries;
    }
  }
  const auto v = freq_vector(stream, target.k, horizon);
  const auto values = v.values();
  body["freq_at_horizon"] = values;
  body["distance_at_horizon"] = distance(values, target);
  emit_json(o, out, make_report({"synth", o.mode, std::nullopt}, body));
  return kOk;
}

json witness_body(const WitnessPlan& plan, std::uint64_t horizon, double eps) {
  const auto witness = build_witness(plan, horizon);
  const unsigned k = plan.targets.front().k;
  const auto traj = frequency_path(witness.stream, k, horizon);
  const std::size_t cycle = plan.cycle_length();
  const std::uint64_t cutoff = plan.partition.end(cycle) < horizon ? plan.partition.end(cycle) : 0;

  json blocks = json::array();
  for (const auto& b : witness.blocks) {
    json jb = b;
    if (b.end <= horizon) {
      const auto v = traj[b.end - 1];
      jb["freq_at_end"] = std::vector<double>(v.begin(), v.end());
    }
    blocks.push_back(jb);
  }
  json targets = json::array();
  ClusterOptions options;
  options.cutoffs = {cutoff};
  for (std::size_t t = 0; t < plan.targets.size(); ++t) {
    const auto point = plan.targets[t].values();
    const auto report = cluster_score(traj, point, eps, SubmeasureSpec::density(), options);
    targets.push_back({{"target", t},
                       {"point", point_to_json(plan.targets[t])},
                       {"hit_count", report.hit_count},
                       {"tail_cutoff", cutoff},
                       {"upper_density", report.score},
                       {"predicted_density_bound", density_lower_bound(plan, t, eps)}});
  }
  return {{"plan", plan_to_json(plan)},   {"horizon", horizon},          {"eps", eps},
          {"blocks", blocks},             {"targets", targets},
          {"predictions", predict_blocks(plan, eps)}};
}

int cmd_witness(const Options& o, std::ostream& out) {
  float_only(o, "witness");
  require(o.plan, "--plan");
  const auto plan = plan_from_json(read_json_file(o.plan));
  const auto horizon = count_or(o.horizon, "--horizon", 1000000);
  emit_json(o, out, make_report({"witness", o.mode, std::nullopt}, witness_body(plan, horizon, o.eps.value_or(0.1))));
  return kOk;
}

int cmd_gamma(const Options& o, std::ostream& out) {
  float_only(o, "gamma");
  const auto stream = load_stream(o);
  const auto horizon = count_or(o.horizon, "--horizon", 100000);
  const double eps = o.eps.value_or(0.0625);
  const auto ideal = SubmeasureSpec::named(o.ideal);
  const auto traj = frequency_path(stream, o.k, horizon);
  const auto candidates = enumerate_rationals(stream.base(), o.k, o.max_den);
  const auto kept = estimate_gamma(traj, candidates, eps, ideal, o.threshold);
  json body = {{"stream", stream_to_json(stream)}, {"k", o.k},
               {"horizon", horizon},               {"eps", eps},
               {"ideal", submeasure_to_json(ideal)}, {"threshold", o.threshold},
               {"max_den", o.max_den},             {"candidates", candidates.size()},
               {"gamma", kept}};
  emit_json(o, out, make_report({"gamma", o.mode, stream_seed(stream)}, body));
  return kOk;
}

int cmd_st_check(const Options& o, std::ostream& out) {
  require(o.matrix, "--matrix");
  const auto matrix = matrix_from_json(read_json_file(o.matrix));
  const auto report = st_check(matrix, o.rows, o.cols, o.tol);
  json body = report;
  body["spec"] = matrix_to_json(matrix);
  emit_json(o, out, make_report({"st-check", o.mode, std::nullopt}, body));
  return kOk;
}

int cmd_core(const Options& o, std::ostream& out) {
  float_only(o, "core");
  require(o.matrix, "--matrix");
  const auto matrix = matrix_from_json(read_json_file(o.matrix));
  std::optional<std::uint64_t> seed;
  json source;
  Trajectory traj;
  if (!o.trajectory.empty()) {
    traj = read_trajectory_csv(o.trajectory);
    source = {{"trajectory", o.trajectory}};
  } else {
    const auto stream = load_stream(o);
    seed = stream_seed(stream);
    traj = frequency_path(stream, o.k, count_or(o.horizon, "--horizon", 100000));
    source = {{"stream", stream_to_json(stream)}, {"k", o.k}};
  }
  InclusionParams params;
  params.eps = o.eps.value_or(0.05);
  params.min_recurrence = o.min_recurrence;
  params.transformed_min_recurrence = o.min_recurrence;
  const auto report = check_core_inclusion(matrix, traj, params);
  json body = report;
  body["source"] = source;
  emit_json(o, out, make_report({"core", o.mode, seed}, body));
  return kOk;
}

// Canned experiments. Each prints headline / expected / observed lines and
// emits a JSON report to --out (or after the lines on stdout).

struct DemoResult {
  std::string headline;
  std::string expected;
  std::string observed;
  json body;
};

DemoResult demo_remark() {
  const std::uint64_t horizon = 10000;
  std::vector<std::vector<Rational>> x(horizon);
  std::vector<double> xd(horizon);
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    x[n - 1] = {Rational(n % 2 == 0 ? 1 : -1)};
    xd[n - 1] = n % 2 == 0 ? 1.0 : -1.0;
  }
  const auto matrix = MatrixSpec::remark();
  const auto rows = rows_within(matrix, horizon);
  const auto ax = transform_exact(matrix, x, 1, rows);
  const bool all_three = std::all_of(ax.begin(), ax.end(), [](const auto& v) { return v[0] == 3; });
  const auto reg = st_check(matrix);
  const auto inclusion = check_core_inclusion(matrix, Trajectory::scalar(xd));

  DemoResult r;
  r.headline = std::string(all_three ? "A_n x = 3 for all n" : "A_n x != 3 for some n") + "; core violation " +
               fmt(inclusion.max_violation);
  r.expected = "lim Ax = 3, K-core(x) = [-1, 1], violation 2";
  r.observed = "exact rows 1.." + std::to_string(rows) + " all 3: " + (all_three ? "yes" : "no") +
               "; regular " + (reg.regular ? "true" : "false") + ", strong norm " + fmt(reg.strong_norm_limit) +
               "; violation " + fmt(inclusion.max_violation);
  r.body = {{"horizon", horizon},   {"rows_exact", rows},  {"all_equal_three", all_three},
            {"regularity", reg},    {"inclusion", inclusion}, {"matrix", matrix_to_json(matrix)}};
  return r;
}

DemoResult demo_factorial() {
  const std::uint64_t ratio = 20;
  const std::uint64_t horizon = 10000000;
  const GrowthRule growth{GrowthRule::Type::geometric, ratio};
  const auto stream = DigitStream::alternating_runs(2, {growth, 1, 0});
  const auto matrix = MatrixSpec::factorial_style(growth);
  const auto rows = rows_within(matrix, horizon);

  // pi on a log grid plus every column the rows touch.
  std::vector<std::uint64_t> horizons;
  for (double t = 0.0; t <= 7.0; t += 0.01) horizons.push_back(static_cast<std::uint64_t>(std::pow(10.0, t)));
  for (std::uint64_t n = 1; n <= rows; ++n) {
    horizons.push_back(growth(2 * n - 1));
    horizons.push_back(growth(2 * n));
  }
  std::sort(horizons.begin(), horizons.end());
  horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
  while (!horizons.empty() && horizons.back() > horizon) horizons.pop_back();
  const auto pi = to_trajectory(freq_trajectory(stream, 1, horizons));

  const double limit = (2.0 * ratio - 1.0) / (ratio + 1.0);
  const auto ax = transform(matrix, pi, 1, rows);
  json values = json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    values.push_back({{"n", ax.index(i)}, {"value", std::vector<double>(ax[i].begin(), ax[i].end())}});
    worst = std::max(worst, std::abs(ax[i][1] - limit));
  }
  InclusionParams params;
  params.original_cutoff = 0;
  params.transformed_cutoff = 0;
  params.min_recurrence = 1;
  params.transformed_min_recurrence = 1;
  const auto inclusion = check_core_inclusion(matrix, pi, params);

  DemoResult r;
  r.headline = "A_n pi -> 39/21 ~ " + fmt(limit) + " > 1";
  r.expected = "(2r-1)/(r+1) = " + fmt(limit) + " for r = 20; outside [0, 1]";
  r.observed = "rows 1.." + std::to_string(rows) + " (g(2n) <= 1e7): digit-1 component max deviation " + fmt(worst) +
               "; " + inclusion.verdict();
  r.body = {{"ratio", ratio},       {"horizon", horizon},      {"limit", limit},
            {"transformed", values}, {"max_deviation", worst}, {"inclusion", inclusion},
            {"matrix", matrix_to_json(matrix)}};
  return r;
}

DemoResult demo_example10() {
  const std::uint64_t horizon = 10000;
  const auto stream = DigitStream::periodic(2, {0, 1});
  const auto rule = SubsequenceRule::digit_positions(stream, 1, horizon);
  const auto matrix = subsequence_matrix(rule);
  const auto traj = frequency_path(stream, 1, horizon);
  const auto rows = rows_within(matrix, horizon);
  const auto ay = transform(matrix, traj, 1, rows);
  bool constant = true;
  for (std::size_t i = 0; i < ay.size(); ++i) constant = constant && ay[i][0] == 0.5 && ay[i][1] == 0.5;
  const auto candidates = enumerate_rationals(2, 1, 8);
  const auto gamma = estimate_gamma(ay, candidates, 0.05, SubmeasureSpec::density(), 0.05);

  DemoResult r;
  r.headline = gamma.size() == 1 ? "Gamma estimate under A_y is a single point"
                                 : "Gamma estimate under A_y has " + std::to_string(gamma.size()) + " points";
  r.expected = "A_y pi constant at (1/2, 1/2); one retained candidate";
  r.observed = "rows 1.." + std::to_string(rows) + " constant (1/2, 1/2): " + (constant ? "yes" : "no") +
               "; retained " + std::to_string(gamma.size()) + " of " + std::to_string(candidates.size());
  r.body = {{"horizon", horizon}, {"rows", rows},  {"constant", constant},
            {"gamma", gamma},     {"matrix", matrix_to_json(matrix)}};
  return r;
}

DemoResult demo_witness() {
  WitnessPlan plan;
  plan.targets = {SimplexPoint::make(2, 1, {Rational(1), Rational(0)}),
                  SimplexPoint::make(2, 1, {Rational(0), Rational(1)}),
                  SimplexPoint::make(2, 1, {make_rational(1, 2), make_rational(1, 2)})};
  plan.partition = BlockPartition(9.0);
  const auto body = witness_body(plan, 1000000, 0.1);

  std::string ends;
  for (const auto& b : body["blocks"]) {
    if (b["target"] == 0 && b.contains("freq_at_end")) ends += (ends.empty() ? "" : ", ") + fmt(b["freq_at_end"][0]);
  }
  std::string densities;
  for (const auto& t : body["targets"]) {
    densities += (densities.empty() ? "" : ", ") + fmt(t["upper_density"].get<double>());
  }
  DemoResult r;
  r.headline = "witness r = 9: upper densities " + densities;
  r.expected = "each target upper density >= 0.1; 0-block ends near r/(r+1) = 0.9";
  r.observed = "pi_0 at ends of (1,0)-blocks: " + ends;
  r.body = body;
  return r;
}

int cmd_demo(const Options& o, std::ostream& out) {
  DemoResult r;
  if (o.demo == "remark") {
    r = demo_remark();
  } else if (o.demo == "factorial") {
    r = demo_factorial();
  } else if (o.demo == "example10") {
    r = demo_example10();
  } else if (o.demo == "witness") {
    r = demo_witness();
  } else {
    throw DomainError("unknown demo '" + o.demo + "' (remark, factorial, example10, witness)");
  }
  out << "headline: " << r.headline << '\n' << "expected: " << r.expected << '\n' << "observed: " << r.observed << '\n';
  json body = r.body;
  body["demo"] = o.demo;
  body["headline"] = r.headline;
  body["expected"] = r.expected;
  body["observed"] = r.observed;
  const auto report = make_report({"demo", "float", std::nullopt}, body);
  if (!o.out.empty()) emit_json(o, out, report);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << "usage: normality-lab <command> [flags]; commands:";
    for (const auto& c : kCommands) err << ' ' << c;
    err << '\n';
    return kUnknownCommand;
  }
  if (args.front().empty() || args.front()[0] != '-') {
    if (std::find(kCommands.begin(), kCommands.end(), args.front()) == kCommands.end()) {
      err << "error: unknown command '" << args.front() << "'\n";
      return kUnknownCommand;
    }
  }

  Options o;
  CLI::App app{"Digit frequencies, witness streams, ideal convergence and Knopp cores", "normality-lab"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  auto stream_flags = [&](CLI::App* c) {
    c->add_option("--spec", o.spec, "stream spec JSON");
    c->add_option("--seed", o.seed, "override the seed of a random stream");
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "output path (default stdout)");
    c->add_option("--mode", o.mode, "rational | float");
  };

  auto* expand = app.add_subcommand("expand", "digits of a stream as CSV");
  stream_flags(expand);
  common(expand);
  expand->add_option("--n", o.n, "number of digits");
  expand->add_option("--horizon", o.horizon, "alias for --n");

  auto* freq = app.add_subcommand("freq", "k-string frequency vectors as CSV");
  stream_flags(freq);
  common(freq);
  freq->add_option("--k", o.k);
  freq->add_option("--horizons", o.horizons, "comma-separated horizons");
  freq->add_option("--horizon", o.horizon);

  auto* simplex = app.add_subcommand("simplex", "rational points of the shift-consistent simplex");
  simplex->require_subcommand(1);
  auto* enumerate = simplex->add_subcommand("enumerate", "all points with denominator <= --max-den");
  common(enumerate);
  enumerate->add_option("--b", o.b);
  enumerate->add_option("--k", o.k);
  enumerate->add_option("--max-den", o.max_den);

  auto* synth = app.add_subcommand("synth", "stream realizing a rational frequency target");
  common(synth);
  synth->add_option("--target", o.target, "target point JSON");
  synth->add_option("--horizon", o.horizon);

  auto* witness = app.add_subcommand("witness", "witness stream for several targets");
  common(witness);
  witness->add_option("--plan", o.plan, "witness plan JSON");
  witness->add_option("--horizon", o.horizon);
  witness->add_option("--eps", o.eps);

  auto* gamma = app.add_subcommand("gamma", "finite-horizon estimate of the I-cluster set");
  stream_flags(gamma);
  common(gamma);
  gamma->add_option("--k", o.k);
  gamma->add_option("--horizon", o.horizon);
  gamma->add_option("--eps", o.eps);
  gamma->add_option("--ideal", o.ideal, "counting | density | summable");
  gamma->add_option("--max-den", o.max_den);
  gamma->add_option("--threshold", o.threshold);

  auto* st = app.add_subcommand("st-check", "Silverman-Toeplitz conditions of a matrix");
  common(st);
  st->add_option("--matrix", o.matrix, "matrix JSON");
  st->add_option("--rows", o.rows);
  st->add_option("--cols", o.cols);
  st->add_option("--tol", o.tol);

  auto* core = app.add_subcommand("core", "Knopp core inclusion under a matrix");
  stream_flags(core);
  common(core);
  core->add_option("--matrix", o.matrix, "matrix JSON");
  core->add_option("--trajectory", o.trajectory, "CSV trajectory (n,x1,...) instead of --spec");
  core->add_option("--k", o.k);
  core->add_option("--horizon", o.horizon);
  core->add_option("--eps", o.eps);
  core->add_option("--min-recurrence", o.min_recurrence);

  auto* demo = app.add_subcommand("demo", "canned counterexamples: remark, factorial, example10, witness");
  demo->add_option("name", o.demo)->required();
  demo->add_option("--out", o.out, "JSON report path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kDomainError;
  }

  try {
    if (expand->parsed()) return cmd_expand(o, out);
    if (freq->parsed()) return cmd_freq(o, out);
    if (enumerate->parsed()) return cmd_simplex_enumerate(o, out);
    if (synth->parsed()) return cmd_synth(o, out);
    if (witness->parsed()) return cmd_witness(o, out);
    if (gamma->parsed()) return cmd_gamma(o, out);
    if (st->parsed()) return cmd_st_check(o, out);
    if (core->parsed()) return cmd_core(o, out);
    if (demo->parsed()) return cmd_demo(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kUnknownCommand;
}

}  // namespace normality::cli
