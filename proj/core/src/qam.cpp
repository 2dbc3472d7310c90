#include "ptrbf/qam.hpp"

#include <bit>
#include <cmath>

#include "ptrbf/errors.hpp"

namespace ptrbf {

std::size_t QamAlphabet::bits_per_symbol() const {
  return static_cast<std::size_t>(std::countr_zero(order));
}

Complex QamAlphabet::symbol_for_label(std::uint32_t label) const {
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == label) return symbols[k];
  }
  throw ParameterError("no symbol with label " + std::to_string(label));
}

QamAlphabet make_qam(std::size_t order) {
  const bool power_of_four = order >= 4 && std::has_single_bit(order) && std::countr_zero(order) % 2 == 0;
  if (!power_of_four) {
    throw ParameterError("QAM order must be a power of 4, got " + std::to_string(order));
  }
  const auto side_bits = static_cast<unsigned>(std::countr_zero(order) / 2);
  const std::size_t side = std::size_t{1} << side_bits;
  QamAlphabet a;
  a.order = order;
  // Mean power of the unscaled grid is 2 (M - 1) / 3.
  a.scale = 1.0 / std::sqrt(2.0 * static_cast<double>(order - 1) / 3.0);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t q = 0; q < side; ++q) {
      const double re = 2.0 * static_cast<double>(i) - static_cast<double>(side - 1);
      const double im = 2.0 * static_cast<double>(q) - static_cast<double>(side - 1);
      a.symbols.emplace_back(re * a.scale, im * a.scale);
      const auto gi = static_cast<std::uint32_t>(i ^ (i >> 1));
      const auto gq = static_cast<std::uint32_t>(q ^ (q >> 1));
      a.labels.push_back((gi << side_bits) | gq);
    }
  }
  return a;
}

CVector gen_qam(const QamAlphabet& alphabet, Rng& rng, std::size_t count) {
  CVector out(count);
  for (auto& s : out) s = alphabet.symbols[rng.below(alphabet.order)];
  return out;
}

CVector gen_qam(std::size_t order, Rng& rng, std::size_t count) {
  return gen_qam(make_qam(order), rng, count);
}

double noise_variance_for(double eb_n0_db, std::size_t bits_per_symbol) {
  if (bits_per_symbol == 0) throw ParameterError("bits per symbol must be > 0");
  if (std::isnan(eb_n0_db)) throw ParameterError("Eb/N0 must be a number");
  if (std::isinf(eb_n0_db) && eb_n0_db > 0) return 0.0;
  return (1.0 / static_cast<double>(bits_per_symbol)) / std::pow(10.0, eb_n0_db / 10.0);
}

ChannelInstance draw_rayleigh_channel(Rng& rng, std::size_t antennas, double noise_variance) {
  if (antennas == 0) throw ParameterError("antenna count must be > 0");
  if (!(noise_variance >= 0.0)) throw ParameterError("noise variance must be >= 0");
  return {sample_complex_gaussian(rng, {{}, 1.0}, antennas, antennas), noise_variance};
}

Dataset gen_dataset(const ChannelInstance& channel, const QamAlphabet& alphabet, std::size_t count,
                    std::size_t slots, Rng& rng) {
  if (count == 0) throw ParameterError("dataset count must be >= 1");
  if (slots == 0) throw ParameterError("slot count must be >= 1");
  const std::size_t antennas = channel.h.rows();
  if (antennas == 0 || channel.h.cols() != antennas) throw DimensionError("channel must be square");
  const ComplexUniformSpec noise{{}, channel.noise_variance};
  Dataset data;
  data.inputs.reserve(count);
  data.targets.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    auto d = gen_qam(alphabet, rng, antennas);
    const auto clean = multiply(channel.h, d);
    CVector x;
    x.reserve(antennas * slots);
    for (std::size_t t = 0; t < slots; ++t) {
      for (const auto s : clean) {
        x.push_back(channel.noise_variance > 0.0 ? s + sample_complex_gaussian(rng, noise) : s);
      }
    }
    data.inputs.push_back(std::move(x));
    data.targets.push_back(std::move(d));
  }
  return data;
}

ChannelInstance channel_for(const TaskConfig& config) {
  const auto alphabet = make_qam(config.order);
  Rng rng(derive_seed(config.seed, {1}));
  return draw_rayleigh_channel(rng, config.antennas,
                               noise_variance_for(config.eb_n0_db, alphabet.bits_per_symbol()));
}

Dataset gen_dataset(const TaskConfig& config) {
  const auto alphabet = make_qam(config.order);
  const auto channel = channel_for(config);
  Rng rng(derive_seed(config.seed, {2}));
  auto data = gen_dataset(channel, alphabet, config.count, config.slots, rng);
  data.meta = {config.seed, config.eb_n0_db};
  return data;
}

}  // namespace ptrbf
