#pragma once

#include <cstdint>
#include <vector>

namespace njk {

// A permutation of {1..n} stored by its images, 1-based as in the usual
// notation sigma = (sigma(1), ..., sigma(n)).
struct Permutation {
  std::vector<int> images;

  static Permutation identity(int n);
  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[static_cast<std::size_t>(i - 1)]; }
  bool valid() const;
  int sign() const;
  Permutation inverse() const;
  // (a * b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

// Koszul sign eps(sigma; x_1..x_n) defined by
//   x_sigma(1) ... x_sigma(n) = eps * x_1 ... x_n
// in the free graded commutative algebra.  Computed by bubble-sorting the
// image sequence; each adjacent swap of degrees a, b contributes (-1)^(ab).
// Throws std::invalid_argument on length mismatch or a non-bijection.
int koszul_sign(const Permutation& perm, const std::vector<int>& degs);

// chi = sgn(sigma) * eps(sigma; degs)
int chi_sign(const Permutation& perm, const std::vector<int>& degs);

// All (i_1, ..., i_r)-shuffles in lexicographic order of image sequences.
// Blocks of size zero are allowed; the list itself must be non-empty.
std::vector<Permutation> enumerate_shuffles(const std::vector<int>& block_sizes);

// Shuffles whose non-empty blocks start with increasing values.
std::vector<Permutation> enumerate_local_shuffles(const std::vector<int>& block_sizes);

// All strictly increasing k-subsets of {0..n-1}, lexicographic.
std::vector<std::vector<int>> combinations(int n, int k);
// Position of an increasing tuple in the lexicographic list above.
std::size_t combination_index(const std::vector<int>& tuple, int n);

std::uint64_t binomial(int n, int k);
std::uint64_t multinomial(const std::vector<int>& parts);

// Sorts seq in place by adjacent swaps, returning the product of
// (-1)^(deg(a)*deg(b)) over swapped pairs, with deg looked up through degree_of.
template <class T, class DegreeOf>
int koszul_sort(std::vector<T>& seq, DegreeOf degree_of) {
  int sign = 1;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    for (std::size_t j = i; j > 0 && seq[j] < seq[j - 1]; --j) {
      if ((degree_of(seq[j]) * degree_of(seq[j - 1])) % 2 != 0) sign = -sign;
      std::swap(seq[j], seq[j - 1]);
    }
  }
  return sign;
}

}  // namespace njk
