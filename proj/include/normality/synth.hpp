#pragma once

#include "normality/digits.hpp"
#include "normality/simplex.hpp"

#include <cstdint>
#include <vector>

namespace normality {

/// Edge s_1...s_{k-1} -> s_2...s_k labelled by the string s_1...s_k.
struct DeBruijnEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t label = 0;  // StringIndex of the length-k string
  std::uint64_t multiplicity = 0;
};

/// Multigraph on length-(k-1) strings whose edge multiplicities are N * p_s for
/// a rational target with common denominator N. For k = 1 there is a single
/// vertex (the empty string) carrying one self-loop per digit.
struct DeBruijnMultigraph {
  unsigned base = 2;
  unsigned k = 1;
  std::uint64_t denominator = 1;
  std::size_t vertex_count = 1;
  std::vector<DeBruijnEdge> edges;  // support only, ordered by label

  /// In-degree equals out-degree at every vertex.
  bool balanced() const;
  /// Edge positions (into `edges`) of each weakly connected component of the
  /// support, ordered by smallest label.
  std::vector<std::vector<std::size_t>> components() const;
  bool connected() const { return components().size() <= 1; }
};

DeBruijnMultigraph debruijn_multigraph(const SimplexPoint& target);

/// Hierholzer circuit over the given component (smallest successor first,
/// starting at the smallest source vertex). Returns the cyclic word whose
/// length-k windows are exactly the component's edges with multiplicity.
std::vector<Digit> eulerian_word(const DeBruijnMultigraph& graph,
                                 const std::vector<std::size_t>& component);

struct SynthOptions {
  /// Disconnected supports: round j repeats each component word j * run_step
  /// times. Runs must grow sublinearly in the prefix length for the
  /// frequencies to converge, so the growth is linear in j, not geometric.
  std::uint64_t run_step = 1;
};

/// Deterministic stream whose k-string frequencies converge to `target`.
/// Connected support gives the periodic Eulerian word (exact at every
/// multiple of the denominator). Disconnected support visits the components'
/// words in linearly growing runs separated by single bridge digits.
/// The all-zero stream comes back with Realization::symbols.
DigitStream synthesize(const SimplexPoint& target, const SynthOptions& options = {});

/// Consecutive blocks I_1, I_2, ... of the positive integers with
/// |I_q| = ceil(ratio^q).
class BlockPartition {
 public:
  explicit BlockPartition(double ratio = 2.0);

  double ratio() const { return ratio_; }
  std::uint64_t length(std::uint64_t q) const;
  std::uint64_t start(std::uint64_t q) const;
  std::uint64_t end(std::uint64_t q) const { return start(q) + length(q) - 1; }

 private:
  double ratio_;
};

struct WitnessPlan {
  std::vector<SimplexPoint> targets;
  BlockPartition partition{2.0};
  /// Target index per block, cycled; empty means round-robin over targets.
  std::vector<std::size_t> assignment;

  void validate() const;
  std::size_t cycle_length() const;
  /// Target of block q (q >= 1).
  std::size_t target_for_block(std::uint64_t q) const;
};

struct WitnessBlock {
  std::uint64_t q = 1;
  std::uint64_t start = 1;
  std::uint64_t end = 1;
  std::size_t target = 0;
};

struct WitnessStream {
  DigitStream stream;
  std::vector<WitnessBlock> blocks;  // all blocks starting at or before the horizon
};

/// Stream filling block I_q with the synthesized stream of its assigned
/// target (restarted at each block).
WitnessStream build_witness(const WitnessPlan& plan, std::uint64_t horizon);

/// Large-q behaviour of the witness trajectory, from the geometric series over
/// earlier blocks: inside a block at cycle position c the frequency vector is
/// (P_c + t eta) / (1/(r-1) + t), t in [0, 1] the scaled offset, with
/// P_c = sum_{i>=1} r^-i eta_{a(c-i)}.
struct BlockPrediction {
  std::size_t cycle_position = 0;
  std::size_t target = 0;
  std::vector<double> block_end;  // frequency vector at t = 1
  double hit_fraction = 0.0;      // share of the block within eps of the target
  double density_bound = 0.0;     // hit_fraction * (r-1)/r
};

std::vector<BlockPrediction> predict_blocks(const WitnessPlan& plan, double eps);
/// Lower bound on the limsup density of the eps-hit set of `target`.
double density_lower_bound(const WitnessPlan& plan, std::size_t target, double eps);

}  // namespace normality
