#pragma once

#include <cstdint>
#include <vector>

#include "ptrbf/complex.hpp"
#include "ptrbf/dataset.hpp"
#include "ptrbf/random.hpp"

namespace ptrbf {

/// Square M-QAM alphabet on the {+-1, +-3, ...}^2 grid scaled to unit mean
/// power. Symbol k has in-phase level index k / L and quadrature level index
/// k % L (L = sqrt(M)); level index i maps to amplitude 2i - (L - 1). Its bit
/// label is gray(iI) << log2(L) | gray(iQ), gray(i) = i ^ (i >> 1).
struct QamAlphabet {
  std::size_t order = 0;
  double scale = 1.0;
  CVector symbols;
  std::vector<std::uint32_t> labels;

  std::size_t bits_per_symbol() const;
  /// Symbol carrying the given Gray label.
  Complex symbol_for_label(std::uint32_t label) const;
};

/// M must be a power of 4 (4, 16, 64, ...).
QamAlphabet make_qam(std::size_t order);

/// `count` symbols drawn uniformly from the alphabet.
CVector gen_qam(const QamAlphabet& alphabet, Rng& rng, std::size_t count);
CVector gen_qam(std::size_t order, Rng& rng, std::size_t count);

/// Flat Rayleigh MIMO channel: i.i.d. CN(0, 1) entries and the AWGN
/// variance implied by Eb/N0 with unit symbol energy.
struct ChannelInstance {
  CMatrix h;
  double noise_variance = 0.0;
};

/// N0 = (1 / bits_per_symbol) / 10^(Eb/N0 / 10); +inf dB gives 0.
double noise_variance_for(double eb_n0_db, std::size_t bits_per_symbol);

ChannelInstance draw_rayleigh_channel(Rng& rng, std::size_t antennas, double noise_variance);

struct TaskConfig {
  std::size_t count = 1;
  double eb_n0_db = 26.0;
  std::uint64_t seed = 0;
  std::size_t antennas = 4;
  std::size_t slots = 4;
  std::size_t order = 16;
};

/// Instances over a given channel: d ~ alphabet^antennas, and the input
/// stacks `slots` noisy observations H d + n_t (width antennas * slots).
Dataset gen_dataset(const ChannelInstance& channel, const QamAlphabet& alphabet, std::size_t count,
                    std::size_t slots, Rng& rng);

/// Draws the channel from the seed and then `count` instances; every call
/// with the same config yields the same data.
Dataset gen_dataset(const TaskConfig& config);

/// Channel used by gen_dataset(config).
ChannelInstance channel_for(const TaskConfig& config);

}  // namespace ptrbf
