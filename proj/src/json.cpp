#include "normality/json.hpp"

#include "normality/errors.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#ifndef NORMALITY_LAB_VERSION
#define NORMALITY_LAB_VERSION "0.0.0"
#endif

namespace normality {

const char* version() { return NORMALITY_LAB_VERSION; }

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("field '") + what + "' has the wrong type");
  }
}

template <typename T>
T get(const json& j, const char* key) {
  return as<T>(field(j, key), key);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : as<T>(*it, key);
}

std::uint64_t get_count(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw SchemaError(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) return parse_rational(j.dump());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    const auto q = j[1].get<std::int64_t>();
    if (q == 0) throw DomainError("zero denominator");
    return make_rational(j[0].get<std::int64_t>(), q);
  }
  throw SchemaError("expected a rational: \"p/q\", an integer, a decimal or [p, q]");
}

json rational_to_json(const Rational& r) {
  const BigInt& p = numerator(r);
  const BigInt& q = denominator(r);
  const BigInt lim(std::numeric_limits<std::int64_t>::max());
  if (abs(p) <= lim && q <= lim) return json::array({p.convert_to<std::int64_t>(), q.convert_to<std::int64_t>()});
  return format_rational(r);
}

std::vector<Rational> rationals_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string("field '") + what + "' must be an array");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

std::vector<Digit> word_from_json(const json& j, unsigned base) {
  if (j.is_string()) return parse_word(j.get<std::string>(), base);
  if (j.is_array()) {
    std::vector<Digit> word;
    for (const auto& d : j) {
      const auto v = as<int>(d, "word");
      if (v < 0 || static_cast<unsigned>(v) >= base) throw DomainError("digit out of range in word");
      word.push_back(static_cast<Digit>(v));
    }
    return word;
  }
  throw SchemaError("word must be a string or a digit array");
}

Realization realization_from(const json& j) {
  return get_or<bool>(j, "symbolic", false) ? Realization::symbols : Realization::number;
}

struct StreamWriter {
  unsigned base;
  json operator()(const RationalSource& s) const {
    return {{"base", base}, {"kind", "rational"}, {"p", s.numerator}, {"q", s.denominator}};
  }
  json operator()(const PeriodicSource& s) const {
    return {{"base", base}, {"kind", "periodic"}, {"word", format_word(s.word, base)}};
  }
  json operator()(const BlockSchedule& s) const {
    json items = json::array();
    for (const auto& item : s.items) items.push_back({{"word", format_word(item.word, base)}, {"repeat", item.repeat}});
    return {{"base", base}, {"kind", "blocks"}, {"items", items}};
  }
  json operator()(const AlternatingRuns& s) const {
    return {{"base", base},         {"kind", "blocks"},    {"rule", "alternating-runs"},
            {"growth", growth_to_json(s.growth)}, {"inside", s.inside}, {"outside", s.outside}};
  }
  json operator()(const RandomSource& s) const {
    json j = {{"base", base}, {"kind", "random"}, {"seed", s.seed}, {"algorithm", kRandomAlgorithm}};
    if (!s.weights.empty()) j["weights"] = s.weights;
    return j;
  }
  json operator()(const GeneratedSource& s) const {
    return {{"base", base}, {"kind", s.generator->name()}, {"generated", s.generator->describe()}};
  }
};

}  // namespace

Evidence evidence_from_string(const std::string& text) {
  for (auto e : {Evidence::none, Evidence::cluster, Evidence::limit_point}) {
    if (to_string(e) == text) return e;
  }
  throw SchemaError("unknown verdict '" + text + "'");
}

GrowthRule growth_from_json(const json& j) {
  const auto type = get<std::string>(j, "type");
  GrowthRule g;
  if (type == "geometric") {
    g.type = GrowthRule::Type::geometric;
    g.ratio = get_count(j, "ratio");
  } else if (type == "factorial") {
    g.type = GrowthRule::Type::factorial;
  } else {
    throw SchemaError("unknown growth type '" + type + "'");
  }
  return g;
}

json growth_to_json(const GrowthRule& g) {
  if (g.type == GrowthRule::Type::factorial) return {{"type", "factorial"}};
  return {{"type", "geometric"}, {"ratio", g.ratio}};
}

DigitStream stream_from_json(const json& j) {
  const auto base = static_cast<unsigned>(get_count(j, "base"));
  const auto kind = get<std::string>(j, "kind");
  if (kind == "rational") {
    return DigitStream::rational(base, get<std::int64_t>(j, "p"), get<std::int64_t>(j, "q"));
  }
  if (kind == "periodic") {
    validate_base(base);
    return DigitStream::periodic(base, word_from_json(field(j, "word"), base), realization_from(j));
  }
  if (kind == "blocks" || kind == "runs") {
    validate_base(base);
    const auto rule = get_or<std::string>(j, "rule", kind == "runs" ? "alternating-runs" : "items");
    if (rule == "alternating-runs") {
      AlternatingRuns runs;
      runs.growth = growth_from_json(field(j, "growth"));
      runs.inside = static_cast<Digit>(get_or<int>(j, "inside", 1));
      runs.outside = static_cast<Digit>(get_or<int>(j, "outside", 0));
      return DigitStream::alternating_runs(base, runs);
    }
    if (rule != "items") throw SchemaError("unknown blocks rule '" + rule + "'");
    const auto& items = field(j, "items");
    if (!items.is_array()) throw SchemaError("field 'items' must be an array");
    std::vector<BlockItem> out;
    for (const auto& item : items) {
      out.push_back({word_from_json(field(item, "word"), base), get_or<std::uint64_t>(item, "repeat", 1)});
    }
    return DigitStream::blocks(base, std::move(out), realization_from(j));
  }
  if (kind == "random") {
    const auto seed = get_count(j, "seed");
    return DigitStream::random(base, seed, get_or<std::vector<double>>(j, "weights", {}));
  }
  throw SchemaError("unknown stream kind '" + kind + "'");
}

json stream_to_json(const DigitStream& stream) {
  json j = std::visit(StreamWriter{stream.base()}, stream.source());
  if (!stream.is_number()) j["symbolic"] = true;
  return j;
}

SimplexPoint point_from_json(const json& j) {
  const auto base = static_cast<unsigned>(get_count(j, "base"));
  const auto k = static_cast<unsigned>(get_or<std::uint64_t>(j, "k", 1));
  return SimplexPoint::make(base, k, rationals_from_json(field(j, "entries"), "entries"));
}

json point_to_json(const SimplexPoint& p) {
  json entries = json::array();
  for (const auto& e : p.entries) entries.push_back(rational_to_json(e));
  return {{"base", p.base}, {"k", p.k}, {"entries", entries}};
}

WitnessPlan plan_from_json(const json& j) {
  const auto base = static_cast<unsigned>(get_or<std::uint64_t>(j, "base", 2));
  const auto k = static_cast<unsigned>(get_or<std::uint64_t>(j, "k", 1));
  const auto& targets = field(j, "targets");
  if (!targets.is_array()) throw SchemaError("field 'targets' must be an array");
  WitnessPlan plan;
  for (const auto& t : targets) {
    plan.targets.push_back(t.is_object() ? point_from_json(t)
                                         : SimplexPoint::make(base, k, rationals_from_json(t, "targets")));
  }
  plan.partition = BlockPartition(get<double>(j, "ratio"));
  if (const auto it = j.find("assignment"); it != j.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "round-robin") throw SchemaError("unknown assignment '" + it->get<std::string>() + "'");
    } else {
      plan.assignment = as<std::vector<std::size_t>>(*it, "assignment");
    }
  }
  plan.validate();
  return plan;
}

json plan_to_json(const WitnessPlan& plan) {
  json targets = json::array();
  for (const auto& t : plan.targets) {
    json entries = json::array();
    for (const auto& e : t.entries) entries.push_back(rational_to_json(e));
    targets.push_back(entries);
  }
  json j = {{"base", plan.targets.empty() ? 2u : plan.targets.front().base},
            {"k", plan.targets.empty() ? 1u : plan.targets.front().k},
            {"targets", targets},
            {"ratio", plan.partition.ratio()}};
  if (plan.assignment.empty()) {
    j["assignment"] = "round-robin";
  } else {
    j["assignment"] = plan.assignment;
  }
  return j;
}

MatrixSpec matrix_from_json(const json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "remark") return MatrixSpec::remark();
  switch (matrix_kind_from_string(kind)) {
    case MatrixSpec::Kind::identity:
      return MatrixSpec::identity();
    case MatrixSpec::Kind::cesaro:
      return MatrixSpec::cesaro();
    case MatrixSpec::Kind::holder:
      return MatrixSpec::holder(static_cast<unsigned>(get_or<std::uint64_t>(j, "order", 1)));
    case MatrixSpec::Kind::riesz_log:
      return MatrixSpec::riesz_log();
    case MatrixSpec::Kind::sparse: {
      const auto& entries = field(j, "entries");
      if (!entries.is_array()) throw SchemaError("field 'entries' must be an array");
      std::vector<SparseEntry> out;
      for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 3) throw SchemaError("sparse entries are [n, i, value]");
        out.push_back({as<std::uint64_t>(e[0], "entries"), as<std::uint64_t>(e[1], "entries"), rational_from_json(e[2])});
      }
      return MatrixSpec::sparse(std::move(out));
    }
    case MatrixSpec::Kind::affine: {
      const auto& terms = field(j, "terms");
      if (!terms.is_array()) throw SchemaError("field 'terms' must be an array");
      std::vector<AffineTerm> out;
      for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 3) throw SchemaError("affine terms are [slope, offset, value]");
        out.push_back({as<std::uint64_t>(t[0], "terms"), as<std::int64_t>(t[1], "terms"), rational_from_json(t[2])});
      }
      return MatrixSpec::affine(std::move(out));
    }
    case MatrixSpec::Kind::subsequence: {
      const auto& rule = field(j, "rule");
      const auto type = get<std::string>(rule, "type");
      if (type == "affine") {
        return subsequence_matrix(
            SubsequenceRule::affine(get_or<std::uint64_t>(rule, "slope", 1), get_or<std::int64_t>(rule, "offset", 0)));
      }
      if (type == "list") {
        return subsequence_matrix(SubsequenceRule::list(get<std::vector<std::uint64_t>>(rule, "indices"),
                                                        get_or<std::string>(rule, "origin", "list")));
      }
      if (type == "digit-positions") {
        return subsequence_matrix(SubsequenceRule::digit_positions(
            stream_from_json(field(rule, "stream")), static_cast<Digit>(get<int>(rule, "digit")),
            get_count(rule, "scan")));
      }
      throw SchemaError("unknown subsequence rule '" + type + "'");
    }
    case MatrixSpec::Kind::factorial_style: {
      GrowthRule growth{GrowthRule::Type::geometric, 20};
      if (const auto it = j.find("growth"); it != j.end()) growth = growth_from_json(*it);
      Rational first(-1);
      Rational second(2);
      if (const auto it = j.find("coefficients"); it != j.end()) {
        const auto c = rationals_from_json(*it, "coefficients");
        if (c.size() != 2) throw SchemaError("factorial-style coefficients are [first, second]");
        first = c[0];
        second = c[1];
      }
      return MatrixSpec::factorial_style(growth, first, second);
    }
  }
  throw SchemaError("unknown matrix kind '" + kind + "'");
}

json matrix_to_json(const MatrixSpec& m) {
  json j = {{"kind", to_string(m.kind)}};
  switch (m.kind) {
    case MatrixSpec::Kind::holder:
      j["order"] = m.order;
      break;
    case MatrixSpec::Kind::sparse: {
      json entries = json::array();
      for (const auto& e : m.entries) entries.push_back({e.row, e.col, format_rational(e.value)});
      j["entries"] = entries;
      break;
    }
    case MatrixSpec::Kind::affine: {
      json terms = json::array();
      for (const auto& t : m.terms) terms.push_back({t.slope, t.offset, format_rational(t.value)});
      j["terms"] = terms;
      break;
    }
    case MatrixSpec::Kind::subsequence:
      if (m.rule.type == SubsequenceRule::Type::affine) {
        j["rule"] = {{"type", "affine"}, {"slope", m.rule.slope}, {"offset", m.rule.offset}};
      } else {
        j["rule"] = {{"type", "list"}, {"indices", m.rule.indices}, {"origin", m.rule.origin}};
      }
      break;
    case MatrixSpec::Kind::factorial_style:
      j["growth"] = growth_to_json(m.growth);
      j["coefficients"] = {format_rational(m.first), format_rational(m.second)};
      break;
    default:
      break;
  }
  return j;
}

SubmeasureSpec submeasure_from_json(const json& j) {
  if (j.is_string()) return SubmeasureSpec::named(j.get<std::string>());
  const auto kind = get<std::string>(j, "kind");
  if (kind == "custom-weights") {
    const auto mode = get_or<std::string>(j, "mode", "finite-phi");
    if (mode != "finite-phi" && mode != "exhaustive-norm") throw SchemaError("unknown mode '" + mode + "'");
    return SubmeasureSpec::custom(get<std::vector<double>>(j, "weights"),
                                  mode == "finite-phi" ? SubmeasureSpec::Mode::finite_phi
                                                       : SubmeasureSpec::Mode::exhaustive_norm);
  }
  return SubmeasureSpec::named(kind);
}

json submeasure_to_json(const SubmeasureSpec& spec) {
  json j = {{"kind", spec.name()}, {"mode", to_string(spec.mode)}};
  if (spec.kind == SubmeasureSpec::Kind::custom_weights) j["weights"] = spec.weights;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

json make_report(const ReportMeta& meta, json body) {
  body["schema"] = kReportSchema;
  body["version"] = version();
  body["type"] = meta.type;
  body["mode"] = meta.mode;
  body["seed"] = meta.seed ? json(*meta.seed) : json(nullptr);
  return body;
}

ReportMeta read_report_meta(const json& j, const std::string& expected_type) {
  if (get<std::string>(j, "schema") != kReportSchema) throw SchemaError("unsupported report schema");
  ReportMeta meta;
  meta.type = get<std::string>(j, "type");
  if (meta.type != expected_type) {
    throw SchemaError("expected a '" + expected_type + "' report, found '" + meta.type + "'");
  }
  meta.mode = get<std::string>(j, "mode");
  const auto& seed = field(j, "seed");
  if (!seed.is_null()) meta.seed = as<std::uint64_t>(seed, "seed");
  return meta;
}

void to_json(json& j, const TailEstimate& t) { j = {{"cutoff", t.cutoff}, {"value", t.value}}; }

void from_json(const json& j, TailEstimate& t) {
  t.cutoff = get<std::uint64_t>(j, "cutoff");
  t.value = get<double>(j, "value");
}

void to_json(json& j, const ClusterReport& r) {
  j = {{"target", r.target},      {"eps", r.eps},     {"ideal", r.ideal},
       {"horizon", r.horizon},    {"hit_count", r.hit_count}, {"hit_profile", r.hit_profile},
       {"tail", r.tail},          {"score", r.score}, {"verdict", to_string(r.verdict)}};
}

void from_json(const json& j, ClusterReport& r) {
  r.target = get<std::vector<double>>(j, "target");
  r.eps = get<double>(j, "eps");
  r.ideal = get<std::string>(j, "ideal");
  r.horizon = get<std::uint64_t>(j, "horizon");
  r.hit_count = get<std::uint64_t>(j, "hit_count");
  r.hit_profile = get<std::vector<std::pair<std::uint64_t, std::uint64_t>>>(j, "hit_profile");
  r.tail = get<std::vector<TailEstimate>>(j, "tail");
  r.score = get<double>(j, "score");
  r.verdict = evidence_from_string(get<std::string>(j, "verdict"));
}

void to_json(json& j, const GammaEntry& g) {
  j = {{"candidate", g.candidate}, {"point", g.point}, {"score", g.score}, {"verdict", to_string(g.verdict)}};
}

void from_json(const json& j, GammaEntry& g) {
  g.candidate = get<std::size_t>(j, "candidate");
  g.point = get<std::vector<double>>(j, "point");
  g.score = get<double>(j, "score");
  g.verdict = evidence_from_string(get<std::string>(j, "verdict"));
}

void to_json(json& j, const RegularityReport& r) {
  j = {{"matrix", r.matrix},
       {"closed_form", r.closed_form},
       {"horizon_limited", r.horizon_limited},
       {"row_horizon", r.row_horizon},
       {"col_horizon", r.col_horizon},
       {"tol", r.tol},
       {"sup_row_norm", r.sup_row_norm},
       {"row_sum", r.row_sum_limit},
       {"strong_norm", r.strong_norm_limit},
       {"max_tail_column", r.max_tail_column},
       {"bounded", r.bounded},
       {"columns_vanish", r.columns_vanish},
       {"row_sums_to_one", r.row_sums_to_one},
       {"regular", r.regular},
       {"strong", r.strong},
       {"witnesses", r.witnesses}};
}

void from_json(const json& j, RegularityReport& r) {
  r.matrix = get<std::string>(j, "matrix");
  r.closed_form = get<bool>(j, "closed_form");
  r.horizon_limited = get<bool>(j, "horizon_limited");
  r.row_horizon = get<std::uint64_t>(j, "row_horizon");
  r.col_horizon = get<std::uint64_t>(j, "col_horizon");
  r.tol = get<double>(j, "tol");
  r.sup_row_norm = get<double>(j, "sup_row_norm");
  r.row_sum_limit = get<double>(j, "row_sum");
  r.strong_norm_limit = get<double>(j, "strong_norm");
  r.max_tail_column = get<double>(j, "max_tail_column");
  r.bounded = get<bool>(j, "bounded");
  r.columns_vanish = get<bool>(j, "columns_vanish");
  r.row_sums_to_one = get<bool>(j, "row_sums_to_one");
  r.regular = get<bool>(j, "regular");
  r.strong = get<bool>(j, "strong");
  r.witnesses = get<std::vector<std::string>>(j, "witnesses");
}

void to_json(json& j, const CoreCandidate& c) { j = {{"point", c.point}, {"recurrence", c.recurrence}}; }

void from_json(const json& j, CoreCandidate& c) {
  c.point = get<std::vector<double>>(j, "point");
  c.recurrence = get<std::uint64_t>(j, "recurrence");
}

void to_json(json& j, const CoreEstimate& c) {
  j = {{"dim", c.dim},
       {"eps", c.eps},
       {"tail_cutoff", c.tail_cutoff},
       {"min_recurrence", c.min_recurrence},
       {"horizon", c.horizon},
       {"horizon_limited", c.horizon_limited},
       {"candidates", c.candidates}};
}

void from_json(const json& j, CoreEstimate& c) {
  c.dim = get<std::size_t>(j, "dim");
  c.eps = get<double>(j, "eps");
  c.tail_cutoff = get<std::uint64_t>(j, "tail_cutoff");
  c.min_recurrence = get<std::uint64_t>(j, "min_recurrence");
  c.horizon = get<std::uint64_t>(j, "horizon");
  c.horizon_limited = get<bool>(j, "horizon_limited");
  c.candidates = get<std::vector<CoreCandidate>>(j, "candidates");
}

void to_json(json& j, const InclusionReport& r) {
  j = {{"matrix", r.matrix},
       {"original", r.original},
       {"transformed", r.transformed},
       {"rows_used", r.rows_used},
       {"violation", r.max_violation},
       {"worst_point", r.worst_point},
       {"holds", r.holds},
       {"horizon_limited", r.horizon_limited},
       {"verdict", r.verdict()}};
}

void from_json(const json& j, InclusionReport& r) {
  r.matrix = get<std::string>(j, "matrix");
  r.original = get<CoreEstimate>(j, "original");
  r.transformed = get<CoreEstimate>(j, "transformed");
  r.rows_used = get<std::uint64_t>(j, "rows_used");
  r.max_violation = get<double>(j, "violation");
  r.worst_point = get<std::vector<double>>(j, "worst_point");
  r.holds = get<bool>(j, "holds");
  r.horizon_limited = get<bool>(j, "horizon_limited");
}

void to_json(json& j, const WitnessBlock& b) {
  j = {{"q", b.q}, {"start", b.start}, {"end", b.end}, {"target", b.target}};
}

void from_json(const json& j, WitnessBlock& b) {
  b.q = get<std::uint64_t>(j, "q");
  b.start = get<std::uint64_t>(j, "start");
  b.end = get<std::uint64_t>(j, "end");
  b.target = get<std::size_t>(j, "target");
}

void to_json(json& j, const BlockPrediction& p) {
  j = {{"cycle_position", p.cycle_position},
       {"target", p.target},
       {"block_end", p.block_end},
       {"hit_fraction", p.hit_fraction},
       {"density_bound", p.density_bound}};
}

void from_json(const json& j, BlockPrediction& p) {
  p.cycle_position = get<std::size_t>(j, "cycle_position");
  p.target = get<std::size_t>(j, "target");
  p.block_end = get<std::vector<double>>(j, "block_end");
  p.hit_fraction = get<double>(j, "hit_fraction");
  p.density_bound = get<double>(j, "density_bound");
}

}  // namespace normality
