#include "varinterp/random.hpp"

#include <cmath>

namespace varinterp {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

InstanceRng::InstanceRng(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  std::uint64_t s = seed;
  state_ = splitmix64(s) ^ fnv1a(stream);
  state_ = splitmix64(state_) ^ index;
  splitmix64(state_);
}

std::uint64_t InstanceRng::next() { return splitmix64(state_); }

double InstanceRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double InstanceRng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

int InstanceRng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

}  // namespace varinterp
