// Shared helpers for the unit and acceptance suites.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "isocoh/catalog.hpp"
#include "isocoh/lattice.hpp"

namespace isocoh::testing {

inline std::string data_path(const std::string& file) {
  return std::string(ISOCOH_DATA_DIR) + "/" + file;
}

inline SurfaceModel fixture(const std::string& file) {
  return load_surface(read_spec_file(data_path(file)));
}

/// Calls fn on every class with all coefficients in [lo, hi].
inline void for_each_in_box(std::size_t rank, Integer lo, Integer hi,
                            const std::function<void(const DivisorClass&)>& fn) {
  std::vector<Integer> c(rank, lo);
  while (true) {
    fn(DivisorClass(c));
    std::size_t pos = rank;
    while (pos > 0 && c[pos - 1] == hi) c[--pos] = lo;
    if (pos == 0) return;
    ++c[pos - 1];
  }
}

/// One representative per orbit of permutations of the last rank-1
/// coordinates (the E_i of a del Pezzo basis): those coefficients sorted in
/// descending order. `fn` also receives the orbit size.
inline void for_each_orbit_representative(
    std::size_t rank, Integer lo, Integer hi,
    const std::function<void(const DivisorClass&, std::uint64_t)>& fn) {
  std::vector<Integer> c(rank, lo);
  std::function<void(std::size_t, Integer)> rec = [&](std::size_t pos, Integer max_value) {
    if (pos == rank) {
      // multinomial (rank-1)! / prod(multiplicity!)
      std::uint64_t size = 1, denom = 1;
      for (std::size_t i = 2; i < rank; ++i) size *= i;
      std::size_t run = 1;
      for (std::size_t i = 2; i <= rank; ++i) {
        if (i < rank && c[i] == c[i - 1]) {
          ++run;
        } else {
          for (std::size_t j = 2; j <= run; ++j) denom *= j;
          run = 1;
        }
      }
      fn(DivisorClass(c), size / denom);
      return;
    }
    for (Integer v = max_value; v >= lo; --v) {
      c[pos] = v;
      rec(pos + 1, v);
    }
  };
  for (Integer a = lo; a <= hi; ++a) {
    c[0] = a;
    if (rank == 1)
      fn(DivisorClass(c), 1);
    else
      rec(1, hi);
  }
}

inline DivisorClass random_class(std::mt19937_64& rng, std::size_t rank, Integer lo, Integer hi) {
  std::uniform_int_distribution<Integer> dist(lo, hi);
  std::vector<Integer> c(rank);
  for (auto& v : c) v = dist(rng);
  return DivisorClass(std::move(c));
}

inline std::vector<SurfaceModel> catalog_surfaces() {
  std::vector<SurfaceModel> out;
  for (int k = 0; k <= 8; ++k) out.push_back(make_del_pezzo(k));
  for (Integer n = 0; n <= 4; ++n) out.push_back(make_hirzebruch(n));
  return out;
}

}  // namespace isocoh::testing
