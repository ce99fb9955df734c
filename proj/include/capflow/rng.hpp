#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

namespace capflow {

// One SplitMix64 step. Used to derive independent sub-seeds from a master
// seed so that parallel workers never share generator state.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic sub-seed for a (master, path...) combination.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

// Uniform draw in (0, 1] built from the top 53 bits of the engine output.
// Kept explicit (instead of std::uniform_real_distribution) so that seeded
// streams reproduce bit for bit across standard libraries.
double uniform_open01(std::mt19937_64& rng);

// Standard exponential draw, -ln(U) with U in (0, 1].
double exponential_draw(std::mt19937_64& rng);

// FNV-1a, used to fold string ids into seed derivations.
std::uint64_t fnv1a(const std::string& s);

}  // namespace capflow
