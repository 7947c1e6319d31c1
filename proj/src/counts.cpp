#include "nfprop/counts.hpp"

#include <stdexcept>

namespace nfprop {

std::vector<std::uint64_t> CollisionCounts::cumulative() const {
  std::vector<std::uint64_t> out(count_all.size());
  std::uint64_t run = 0;
  for (std::size_t i = 0; i < count_all.size(); ++i) out[i] = run += count_all[i];
  return out;
}

std::uint64_t CollisionCounts::total() const noexcept {
  std::uint64_t run = 0;
  for (auto c : count_all) run += c;
  return run;
}

CollisionCounts& CollisionCounts::operator+=(const CollisionCounts& other) {
  if (s != 0 && other.s != 0 && n != other.n) throw std::invalid_argument("counts from different graphs");
  if (s == 0) n = other.n;
  if (other.count_all.size() > count_all.size()) count_all.resize(other.count_all.size(), 0);
  for (std::size_t i = 0; i < other.count_all.size(); ++i) count_all[i] += other.count_all[i];
  s += other.s;
  edge_scans += other.edge_scans;
  return *this;
}

}  // namespace nfprop
