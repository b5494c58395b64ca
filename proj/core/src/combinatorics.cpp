#include "njk/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace njk {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.images.resize(static_cast<std::size_t>(n));
  std::iota(p.images.begin(), p.images.end(), 1);
  return p;
}

bool Permutation::valid() const {
  std::vector<char> seen(images.size(), 0);
  for (int v : images) {
    if (v < 1 || v > size() || seen[static_cast<std::size_t>(v - 1)]) return false;
    seen[static_cast<std::size_t>(v - 1)] = 1;
  }
  return true;
}

int Permutation::sign() const {
  int s = 1;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] > images[j]) s = -s;
  return s;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    r.images[static_cast<std::size_t>(images[i] - 1)] = static_cast<int>(i + 1);
  return r;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  Permutation r;
  r.images.resize(b.images.size());
  for (std::size_t i = 0; i < b.images.size(); ++i) r.images[i] = a(b.images[i]);
  return r;
}

int koszul_sign(const Permutation& perm, const std::vector<int>& degs) {
  if (perm.images.size() != degs.size())
    throw std::invalid_argument("koszul_sign: permutation has length " +
                                std::to_string(perm.images.size()) + " but " +
                                std::to_string(degs.size()) + " degrees were given");
  if (!perm.valid()) throw std::invalid_argument("koszul_sign: images are not a bijection");
  // Sorting x_sigma(1)..x_sigma(n) back to x_1..x_n with adjacent swaps.
  std::vector<int> seq = perm.images;
  return koszul_sort(seq, [&](int v) { return degs[static_cast<std::size_t>(v - 1)]; });
}

int chi_sign(const Permutation& perm, const std::vector<int>& degs) {
  return perm.sign() * koszul_sign(perm, degs);
}

namespace {

// Assign positions 1..N to blocks; block b receives its positions in
// increasing order.  Recursion over the next image value keeps the output
// sorted by image sequence once we sort at the end.
void shuffle_rec(const std::vector<int>& sizes, std::vector<int>& remaining,
                 std::vector<std::vector<int>>& chosen, int next_value, int total,
                 std::vector<Permutation>& out) {
  if (next_value > total) {
    Permutation p;
    for (const auto& block : chosen) p.images.insert(p.images.end(), block.begin(), block.end());
    out.push_back(std::move(p));
    return;
  }
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (remaining[b] == 0) continue;
    --remaining[b];
    chosen[b].push_back(next_value);
    shuffle_rec(sizes, remaining, chosen, next_value + 1, total, out);
    chosen[b].pop_back();
    ++remaining[b];
  }
}

}  // namespace

std::vector<Permutation> enumerate_shuffles(const std::vector<int>& block_sizes) {
  if (block_sizes.empty()) throw std::invalid_argument("enumerate_shuffles: no blocks");
  int total = 0;
  for (int s : block_sizes) {
    if (s < 0) throw std::invalid_argument("enumerate_shuffles: negative block size");
    total += s;
  }
  std::vector<int> remaining = block_sizes;
  std::vector<std::vector<int>> chosen(block_sizes.size());
  std::vector<Permutation> out;
  shuffle_rec(block_sizes, remaining, chosen, 1, total, out);
  std::sort(out.begin(), out.end(),
            [](const Permutation& a, const Permutation& b) { return a.images < b.images; });
  return out;
}

std::vector<Permutation> enumerate_local_shuffles(const std::vector<int>& block_sizes) {
  std::vector<Permutation> all = enumerate_shuffles(block_sizes);
  std::vector<Permutation> out;
  for (auto& p : all) {
    int last_first = 0;
    bool ok = true;
    std::size_t pos = 0;
    for (int s : block_sizes) {
      if (s > 0) {
        if (p.images[pos] < last_first) {
          ok = false;
          break;
        }
        last_first = p.images[pos];
      }
      pos += static_cast<std::size_t>(s);
    }
    if (ok) out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::size_t combination_index(const std::vector<int>& tuple, int n) {
  // Count the tuples that precede this one lexicographically.
  std::size_t idx = 0;
  int k = static_cast<int>(tuple.size());
  int prev = -1;
  for (int pos = 0; pos < k; ++pos) {
    for (int v = prev + 1; v < tuple[static_cast<std::size_t>(pos)]; ++v)
      idx += binomial(n - v - 1, k - pos - 1);
    prev = tuple[static_cast<std::size_t>(pos)];
  }
  return idx;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t multinomial(const std::vector<int>& parts) {
  std::uint64_t r = 1;
  int total = 0;
  for (int p : parts) {
    total += p;
    r *= binomial(total, p);
  }
  return r;
}

}  // namespace njk
