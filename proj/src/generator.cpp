#include "hierflow/generator.hpp"

#include <stdexcept>

namespace hierflow {

GeneratorId GeneratorId::from_ordinal(int ordinal) {
  if (ordinal < 0 || ordinal >= kMaxGenerators) throw std::out_of_range("generator ordinal");
  const int slot = ordinal / kGeneratorsPerSlot;
  const int rest = ordinal % kGeneratorsPerSlot;
  if (rest / 4 > 2) throw std::out_of_range("generator ordinal");
  return {static_cast<std::uint8_t>(slot), static_cast<Species>(rest / 4), static_cast<Spin>((rest / 2) % 2),
          static_cast<Conj>(rest % 2)};
}

std::string GeneratorId::name() const {
  static const char* species_names[3] = {"a", "b", "e"};
  std::string out = species_names[static_cast<int>(species)];
  out += spin == Spin::Up ? "_up" : "_dn";
  out += conj == Conj::Plus ? "^+" : "^-";
  out += is_external() ? "@ext" : "@" + std::to_string(slot);
  return out;
}

MonomialKey MonomialKey::slot_mask(int s) {
  MonomialKey m;
  for (int k = 0; k < kGeneratorsPerSlot; ++k) m = m | single(s * kGeneratorsPerSlot + k);
  return m;
}

int MonomialKey::count_above(int ordinal) const {
  if (ordinal < 64) {
    const std::uint64_t mask = ordinal == 63 ? 0 : (~std::uint64_t{0} << (ordinal + 1));
    return std::popcount(lo_ & mask) + std::popcount(hi_);
  }
  const int o = ordinal - 64;
  const std::uint64_t mask = o == 63 ? 0 : (~std::uint64_t{0} << (o + 1));
  return std::popcount(hi_ & mask);
}

std::vector<int> MonomialKey::ordinals() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(degree()));
  for_each([&](int o) { out.push_back(o); });
  return out;
}

int product_sign(const MonomialKey& a, const MonomialKey& b) {
  int inversions = 0;
  b.for_each([&](int o) { inversions += a.count_above(o); });
  return (inversions & 1) != 0 ? -1 : 1;
}

int split_sign(const MonomialKey& key, const MonomialKey& inner) {
  // Each generator of `inner` passes every outer generator above it.
  const MonomialKey outer = key.without(inner);
  int crossings = 0;
  inner.for_each([&](int o) { crossings += outer.count_above(o); });
  return (crossings & 1) != 0 ? -1 : 1;
}

int sort_with_sign(std::vector<int>& ordinals) {
  int sign = 1;
  for (std::size_t i = 1; i < ordinals.size(); ++i) {
    for (std::size_t j = i; j > 0 && ordinals[j - 1] >= ordinals[j]; --j) {
      if (ordinals[j - 1] == ordinals[j]) return 0;
      std::swap(ordinals[j - 1], ordinals[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < ordinals.size(); ++i) {
    if (ordinals[i - 1] == ordinals[i]) return 0;
  }
  return sign;
}

std::string monomial_name(const MonomialKey& key) {
  if (key.empty()) return "1";
  std::string out;
  key.for_each([&](int o) {
    if (!out.empty()) out += " ";
    out += GeneratorId::from_ordinal(o).name();
  });
  return out;
}

}  // namespace hierflow
