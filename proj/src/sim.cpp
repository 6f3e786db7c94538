#include "als/sim.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace als {
namespace {

std::size_t word_count(std::size_t num_vectors) {
  return (num_vectors + 63) / 64;
}

// Clears padding bits past num_vectors in the last word.
void mask_tail(BitRow& row, std::size_t num_vectors) {
  std::size_t rem = num_vectors % 64;
  if (rem != 0 && !row.empty()) row.back() &= (std::uint64_t{1} << rem) - 1;
}

}  // namespace

std::size_t popcount_row(const BitRow& row) {
  std::size_t total = 0;
  for (std::uint64_t w : row) total += std::popcount(w);
  return total;
}

VectorSet gen_vectors_exhaustive(int num_inputs) {
  if (num_inputs < 0 || num_inputs > 24)
    throw std::invalid_argument(
        "exhaustive vector generation requires 0 <= m <= 24");
  VectorSet v;
  v.num_inputs = num_inputs;
  v.num_vectors = std::size_t{1} << num_inputs;
  v.exhaustive = true;
  std::size_t words = word_count(v.num_vectors);
  v.rows.assign(num_inputs, BitRow(words, 0));
  for (int i = 0; i < num_inputs; ++i) {
    BitRow& row = v.rows[i];
    if (i < 6) {
      // bit j of the row is (j >> i) & 1; period 2^(i+1) within a word
      std::uint64_t pattern = 0;
      for (int j = 0; j < 64; ++j)
        if ((j >> i) & 1) pattern |= std::uint64_t{1} << j;
      for (auto& w : row) w = pattern;
    } else {
      // whole words alternate in blocks of 2^(i-6)
      std::size_t block = std::size_t{1} << (i - 6);
      for (std::size_t w = 0; w < words; ++w)
        if ((w / block) & 1) row[w] = ~std::uint64_t{0};
    }
    mask_tail(row, v.num_vectors);
  }
  return v;
}

VectorSet gen_vectors_mc(int num_inputs, std::size_t num_vectors,
                         std::uint64_t seed) {
  if (num_inputs < 0) throw std::invalid_argument("negative PI count");
  VectorSet v;
  v.num_inputs = num_inputs;
  v.num_vectors = num_vectors;
  v.seed = seed;
  std::size_t words = word_count(num_vectors);
  v.rows.assign(num_inputs, BitRow(words, 0));
  std::mt19937_64 rng(seed);
  for (auto& row : v.rows) {
    for (auto& w : row) w = rng();
    mask_tail(row, num_vectors);
  }
  return v;
}

TraceMap simulate(const Netlist& n, const VectorSet& v) {
  if (static_cast<int>(n.primary_inputs.size()) != v.num_inputs)
    throw std::invalid_argument("PI count mismatch between netlist and vectors");
  std::size_t words = word_count(v.num_vectors);
  TraceMap traces;
  traces.reserve(n.gates.size());
  for (std::size_t i = 0; i < n.primary_inputs.size(); ++i)
    traces[n.primary_inputs[i]] = v.rows[i];

  const BitRow zeros(words, 0);
  BitRow ones(words, ~std::uint64_t{0});
  mask_tail(ones, v.num_vectors);

  auto row_of = [&](FaninRef f) -> const BitRow& {
    if (f == FaninRef::const0()) return zeros;
    if (f == FaninRef::const1()) return ones;
    return traces.at(f.gate_id());
  };

  for (GateId id : topological_order(n)) {
    const Gate& g = n.gate(id);
    if (g.kind == GateKind::Input) continue;
    BitRow out = row_of(g.fanins[0]);
    bool invert = false;
    switch (g.kind) {
      case GateKind::Nand: invert = true; [[fallthrough]];
      case GateKind::And:
        for (std::size_t k = 1; k < g.fanins.size(); ++k) {
          const BitRow& r = row_of(g.fanins[k]);
          for (std::size_t w = 0; w < words; ++w) out[w] &= r[w];
        }
        break;
      case GateKind::Nor: invert = true; [[fallthrough]];
      case GateKind::Or:
        for (std::size_t k = 1; k < g.fanins.size(); ++k) {
          const BitRow& r = row_of(g.fanins[k]);
          for (std::size_t w = 0; w < words; ++w) out[w] |= r[w];
        }
        break;
      case GateKind::Xnor: invert = true; [[fallthrough]];
      case GateKind::Xor:
        for (std::size_t k = 1; k < g.fanins.size(); ++k) {
          const BitRow& r = row_of(g.fanins[k]);
          for (std::size_t w = 0; w < words; ++w) out[w] ^= r[w];
        }
        break;
      case GateKind::Not: invert = true; break;
      case GateKind::Buf: break;
      case GateKind::Input: break;
    }
    if (invert) {
      for (auto& w : out) w = ~w;
      mask_tail(out, v.num_vectors);
    }
    traces[id] = std::move(out);
  }
  return traces;
}

ErrorReport error_report(const Netlist& accurate, const Netlist& approx,
                         const VectorSet& v) {
  if (accurate.primary_inputs.size() != approx.primary_inputs.size() ||
      accurate.primary_outputs.size() != approx.primary_outputs.size())
    throw std::invalid_argument("accurate/approximate interface mismatch");
  std::size_t words = (v.num_vectors + 63) / 64;
  TraceMap ta = simulate(accurate, v);
  TraceMap tb = simulate(approx, v);

  const BitRow zeros(words, 0);
  BitRow ones(words, ~std::uint64_t{0});
  mask_tail(ones, v.num_vectors);
  auto row_of = [&](const TraceMap& t, FaninRef f) -> const BitRow& {
    if (f == FaninRef::const0()) return zeros;
    if (f == FaninRef::const1()) return ones;
    return t.at(f.gate_id());
  };

  std::size_t n_po = accurate.primary_outputs.size();
  ErrorReport rep;
  rep.num_vectors = v.num_vectors;
  rep.per_po_error.resize(n_po);
  std::vector<BitRow> diffs(n_po, BitRow(words, 0));
  BitRow any(words, 0);
  for (std::size_t i = 0; i < n_po; ++i) {
    const BitRow& ra = row_of(ta, accurate.primary_outputs[i]);
    const BitRow& rb = row_of(tb, approx.primary_outputs[i]);
    for (std::size_t w = 0; w < words; ++w) {
      diffs[i][w] = ra[w] ^ rb[w];
      any[w] |= diffs[i][w];
    }
    rep.per_po_error[i] =
        static_cast<double>(popcount_row(diffs[i])) / v.num_vectors;
  }
  rep.er = static_cast<double>(popcount_row(any)) / v.num_vectors;

  // NMED: output word interpreted as unsigned, PO index 0 = LSB.
  long double denom = std::exp2(static_cast<long double>(n_po)) - 1.0L;
  long double sum = 0.0L;
  std::vector<const BitRow*> a_rows(n_po), b_rows(n_po);
  for (std::size_t i = 0; i < n_po; ++i) {
    a_rows[i] = &row_of(ta, accurate.primary_outputs[i]);
    b_rows[i] = &row_of(tb, approx.primary_outputs[i]);
  }
  for (std::size_t j = 0; j < v.num_vectors; ++j) {
    std::size_t w = j / 64;
    int b = static_cast<int>(j % 64);
    long double va = 0.0L, vb = 0.0L, pw = 1.0L;
    for (std::size_t i = 0; i < n_po; ++i, pw *= 2.0L) {
      if (((*a_rows[i])[w] >> b) & 1) va += pw;
      if (((*b_rows[i])[w] >> b) & 1) vb += pw;
    }
    sum += std::fabs(va - vb);
  }
  rep.nmed = static_cast<double>(sum / denom / v.num_vectors);
  return rep;
}

SimilarityTable similarity_table(const Netlist& n, GateId target,
                                 const TraceMap& traces,
                                 std::size_t num_vectors) {
  const BitRow& t = traces.at(target);
  SimilarityTable table;
  table.target = target;
  std::size_t ones = popcount_row(t);
  table.to_const1 = static_cast<double>(ones) / num_vectors;
  table.to_const0 = 1.0 - table.to_const1;
  for (GateId g : tfi(n, FaninRef::gate(target))) {
    if (g == target) continue;
    const BitRow& r = traces.at(g);
    std::size_t same = 0;
    for (std::size_t w = 0; w < t.size(); ++w)
      same += std::popcount(~(t[w] ^ r[w]));
    // padding bits in the last word match trivially; subtract them
    same -= t.size() * 64 - num_vectors;
    table.to_tfi.emplace_back(g, static_cast<double>(same) / num_vectors);
  }
  return table;
}

}  // namespace als
