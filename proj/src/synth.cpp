#include "normality/synth.hpp"

#include "normality/errors.hpp"
#include "normality/freq.hpp"
#include "normality/json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace normality {

namespace {

constexpr auto kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_power(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t value = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (value > kSaturated / base) return kSaturated;
    value *= base;
  }
  return value;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

bool all_zero(const std::vector<Digit>& word) {
  return std::all_of(word.begin(), word.end(), [](Digit d) { return d == 0; });
}

void append_cyclic(const std::vector<Digit>& word, std::size_t count, std::vector<Digit>& out) {
  for (std::size_t i = 0; i < count; ++i) out.push_back(word[i % word.size()]);
}

class ComponentRunsGenerator final : public DigitGenerator {
 public:
  ComponentRunsGenerator(unsigned base, std::vector<std::vector<Digit>> words,
                         std::uint64_t run_step)
      : base_(base), words_(std::move(words)), run_step_(run_step) {}

  std::string name() const override { return "component-runs"; }

  void generate(std::size_t count, std::vector<Digit>& out) const override {
    const std::size_t target = out.size() + count;
    bool first = true;
    for (std::uint64_t round = 1; out.size() < target; ++round) {
      // Linear growth: the current run stays an O(1/sqrt(n)) share of the prefix.
      const std::uint64_t reps = round > kSaturated / run_step_ ? kSaturated : round * run_step_;
      for (const auto& word : words_) {
        if (out.size() == target) return;
        if (!first) out.push_back(word.front());  // bridge
        first = false;
        const std::uint64_t room = target - out.size();
        const std::uint64_t run =
            reps > room / word.size() ? room : reps * static_cast<std::uint64_t>(word.size());
        append_cyclic(word, static_cast<std::size_t>(run), out);
      }
    }
  }

  nlohmann::json describe() const override {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& w : words_) words.push_back(format_word(w, base_));
    return {{"kind", name()}, {"base", base_}, {"words", words}, {"run_step", run_step_}};
  }

 private:
  unsigned base_;
  std::vector<std::vector<Digit>> words_;
  std::uint64_t run_step_;
};

// Per-target block filler: the periodic word when the support is connected,
// otherwise a fresh prefix of the synthesized stream.
struct BlockFiller {
  DigitStream stream;
  std::vector<Digit> word;  // empty when not periodic

  void fill(std::size_t count, std::vector<Digit>& out) const {
    if (!word.empty()) {
      append_cyclic(word, count, out);
      return;
    }
    const auto digits = stream.take(count);
    out.insert(out.end(), digits.begin(), digits.end());
  }
};

class WitnessGenerator final : public DigitGenerator {
 public:
  WitnessGenerator(WitnessPlan plan, std::vector<BlockFiller> fillers)
      : plan_(std::move(plan)), fillers_(std::move(fillers)) {}

  std::string name() const override { return "witness"; }

  void generate(std::size_t count, std::vector<Digit>& out) const override {
    const std::size_t target = out.size() + count;
    for (std::uint64_t q = 1; out.size() < target; ++q) {
      const std::uint64_t room = target - out.size();
      const std::uint64_t len = std::min(plan_.partition.length(q), room);
      fillers_[plan_.target_for_block(q)].fill(static_cast<std::size_t>(len), out);
    }
  }

  nlohmann::json describe() const override {
    return {{"kind", name()}, {"plan", plan_to_json(plan_)}};
  }

 private:
  WitnessPlan plan_;
  std::vector<BlockFiller> fillers_;
};

}  // namespace

bool DeBruijnMultigraph::balanced() const {
  std::vector<std::int64_t> net(vertex_count, 0);
  for (const auto& e : edges) {
    net[e.from] += static_cast<std::int64_t>(e.multiplicity);
    net[e.to] -= static_cast<std::int64_t>(e.multiplicity);
  }
  return std::all_of(net.begin(), net.end(), [](std::int64_t x) { return x == 0; });
}

std::vector<std::vector<std::size_t>> DeBruijnMultigraph::components() const {
  std::vector<std::size_t> parent(vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : edges) {
    const auto a = find_root(parent, e.from);
    const auto b = find_root(parent, e.to);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(vertex_count, kSaturated);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto root = find_root(parent, edges[i].from);
    if (slot[root] == kSaturated) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(i);
  }
  return out;
}

DeBruijnMultigraph debruijn_multigraph(const SimplexPoint& target) {
  const auto report = is_member(target.base, target.k, std::span<const Rational>(target.entries));
  if (!report.member) throw DomainError("debruijn_multigraph: target is not a simplex member");
  const StringIndex strings(target.base, target.k);
  DeBruijnMultigraph graph;
  graph.base = target.base;
  graph.k = target.k;
  graph.vertex_count = strings.size() / target.base;
  graph.denominator = target.common_denominator().convert_to<std::uint64_t>();
  const auto numerators = target.numerators();
  for (std::size_t label = 0; label < numerators.size(); ++label) {
    if (numerators[label] == 0) continue;
    graph.edges.push_back(DeBruijnEdge{label / target.base, label % graph.vertex_count, label,
                                       numerators[label]});
  }
  return graph;
}

std::vector<Digit> eulerian_word(const DeBruijnMultigraph& graph,
                                 const std::vector<std::size_t>& component) {
  if (component.empty()) throw DomainError("eulerian_word: empty component");
  // Outgoing edges per vertex in increasing successor order.
  std::vector<std::vector<std::size_t>> outgoing(graph.vertex_count);
  std::vector<std::uint64_t> remaining(graph.edges.size(), 0);
  for (std::size_t pos : component) {
    outgoing[graph.edges[pos].from].push_back(pos);
    remaining[pos] = graph.edges[pos].multiplicity;
  }
  for (auto& list : outgoing) {
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return graph.edges[a].to < graph.edges[b].to;
    });
  }
  std::vector<std::size_t> cursor(graph.vertex_count, 0);
  std::size_t start = graph.edges[component.front()].from;
  for (std::size_t pos : component) start = std::min(start, graph.edges[pos].from);

  struct Frame {
    std::size_t vertex;
    std::size_t edge;  // edge taken to reach `vertex`
  };
  std::vector<Frame> stack{{start, kSaturated}};
  std::vector<std::size_t> circuit;
  while (!stack.empty()) {
    const std::size_t v = stack.back().vertex;
    auto& list = outgoing[v];
    while (cursor[v] < list.size() && remaining[list[cursor[v]]] == 0) ++cursor[v];
    if (cursor[v] < list.size()) {
      const std::size_t pos = list[cursor[v]];
      --remaining[pos];
      stack.push_back({graph.edges[pos].to, pos});
    } else {
      if (stack.back().edge != kSaturated) circuit.push_back(stack.back().edge);
      stack.pop_back();
    }
  }
  std::uint64_t expected = 0;
  for (std::size_t pos : component) expected += graph.edges[pos].multiplicity;
  if (circuit.size() != expected) {
    throw DomainError("eulerian_word: component is not Eulerian (unbalanced degrees)");
  }
  std::reverse(circuit.begin(), circuit.end());
  const std::size_t lead = graph.vertex_count;  // b^(k-1): first digit = label / lead
  std::vector<Digit> word;
  word.reserve(circuit.size());
  for (std::size_t pos : circuit) word.push_back(static_cast<Digit>(graph.edges[pos].label / lead));
  return word;
}

DigitStream synthesize(const SimplexPoint& target, const SynthOptions& options) {
  if (options.run_step < 1) throw DomainError("synthesize: run_step must be >= 1");
  const auto graph = debruijn_multigraph(target);
  const auto components = graph.components();
  if (components.size() == 1) {
    auto word = eulerian_word(graph, components.front());
    const auto realization = all_zero(word) ? Realization::symbols : Realization::number;
    return DigitStream::periodic(graph.base, std::move(word), realization);
  }
  std::vector<std::vector<Digit>> words;
  words.reserve(components.size());
  for (const auto& component : components) words.push_back(eulerian_word(graph, component));
  return DigitStream::generated(
      graph.base,
      std::make_shared<ComponentRunsGenerator>(graph.base, std::move(words), options.run_step));
}

BlockPartition::BlockPartition(double ratio) : ratio_(ratio) {
  if (!(ratio > 1.0) || !std::isfinite(ratio)) {
    throw DomainError("block partition: ratio must be a finite number > 1");
  }
}

std::uint64_t BlockPartition::length(std::uint64_t q) const {
  if (q == 0) throw DomainError("block partition: blocks are numbered from 1");
  if (ratio_ == std::floor(ratio_) && ratio_ < 1e18) {
    return saturating_power(static_cast<std::uint64_t>(ratio_), q);
  }
  const long double value = std::ceil(std::pow(static_cast<long double>(ratio_), q));
  return value >= 1.8e19L ? kSaturated : static_cast<std::uint64_t>(value);
}

std::uint64_t BlockPartition::start(std::uint64_t q) const {
  std::uint64_t position = 1;
  for (std::uint64_t p = 1; p < q; ++p) {
    const std::uint64_t len = length(p);
    if (len >= kSaturated - position) return kSaturated;
    position += len;
  }
  return position;
}

void WitnessPlan::validate() const {
  if (targets.empty()) throw DomainError("witness plan: empty target list");
  for (const auto& t : targets) {
    if (t.base != targets.front().base || t.k != targets.front().k) {
      throw DomainError("witness plan: targets must share base and k");
    }
    if (!is_member(t.base, t.k, std::span<const Rational>(t.entries)).member) {
      throw DomainError("witness plan: target " + t.to_string() + " is not a simplex member");
    }
  }
  std::vector<bool> seen(targets.size(), assignment.empty());
  for (auto idx : assignment) {
    if (idx >= targets.size()) throw DomainError("witness plan: assignment index out of range");
    seen[idx] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw DomainError("witness plan: every target must appear in the assignment cycle");
  }
}

std::size_t WitnessPlan::cycle_length() const {
  return assignment.empty() ? targets.size() : assignment.size();
}

std::size_t WitnessPlan::target_for_block(std::uint64_t q) const {
  const std::size_t position = static_cast<std::size_t>((q - 1) % cycle_length());
  return assignment.empty() ? position : assignment[position];
}

WitnessStream build_witness(const WitnessPlan& plan, std::uint64_t horizon) {
  plan.validate();
  if (horizon == 0) throw DomainError("build_witness: horizon must be >= 1");
  std::vector<BlockFiller> fillers;
  bool number = false;
  for (const auto& target : plan.targets) {
    auto stream = synthesize(target);
    number = number || stream.is_number();
    std::vector<Digit> word;
    if (const auto* periodic = std::get_if<PeriodicSource>(&stream.source())) word = periodic->word;
    fillers.push_back(BlockFiller{std::move(stream), std::move(word)});
  }
  const unsigned base = plan.targets.front().base;
  WitnessStream out{
      DigitStream::generated(base, std::make_shared<WitnessGenerator>(plan, std::move(fillers)),
                             number ? Realization::number : Realization::symbols),
      {}};
  std::uint64_t start = 1;
  for (std::uint64_t q = 1; start <= horizon; ++q) {
    const std::uint64_t len = plan.partition.length(q);
    const std::uint64_t end = len >= kSaturated - start ? kSaturated : start + len - 1;
    out.blocks.push_back(WitnessBlock{q, start, end, plan.target_for_block(q)});
    if (end == kSaturated) break;
    start = end + 1;
  }
  return out;
}

std::vector<BlockPrediction> predict_blocks(const WitnessPlan& plan, double eps) {
  plan.validate();
  if (!(eps > 0.0)) throw DomainError("predict_blocks: eps must be positive");
  const double r = plan.partition.ratio();
  const std::size_t cycle = plan.cycle_length();
  const std::size_t dim = plan.targets.front().entries.size();
  std::vector<std::vector<double>> etas;
  for (const auto& t : plan.targets) etas.push_back(t.values());
  const double earlier_mass = 1.0 / (r - 1.0);

  std::vector<BlockPrediction> out;
  for (std::size_t c = 0; c < cycle; ++c) {
    const std::size_t target = plan.target_for_block(c + 1);
    std::vector<double> prior(dim, 0.0);
    double weight = 1.0;
    for (std::size_t i = 1; i < 100000; ++i) {
      weight /= r;
      if (weight < 1e-18) break;
      const std::size_t earlier = plan.target_for_block(((c + cycle * i - i) % cycle) + 1);
      for (std::size_t s = 0; s < dim; ++s) prior[s] += weight * etas[earlier][s];
    }
    BlockPrediction p;
    p.cycle_position = c;
    p.target = target;
    p.block_end.resize(dim);
    double offset = 0.0;
    for (std::size_t s = 0; s < dim; ++s) {
      p.block_end[s] = (prior[s] + etas[target][s]) / (earlier_mass + 1.0);
      const double diff = prior[s] - etas[target][s] * earlier_mass;
      offset += diff * diff;
    }
    // distance(t) = |P - eta/(r-1)| / (1/(r-1) + t), decreasing in t.
    const double threshold_t = std::sqrt(offset) / eps - earlier_mass;
    p.hit_fraction = std::clamp(1.0 - std::max(threshold_t, 0.0), 0.0, 1.0);
    p.density_bound = p.hit_fraction * (r - 1.0) / r;
    out.push_back(std::move(p));
  }
  return out;
}

double density_lower_bound(const WitnessPlan& plan, std::size_t target, double eps) {
  double best = 0.0;
  for (const auto& p : predict_blocks(plan, eps)) {
    if (p.target == target) best = std::max(best, p.density_bound);
  }
  return best;
}

}  // namespace normality
