#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/inkblot.hpp"
#include "core/seedcore.hpp"

namespace gotcha::matching {

// Largest k for which every count below fits in 64 bits (20! < 2^64).
inline constexpr int kMaxK = 20;

// A bijection [k] -> [k]. Stored 0-based; wire and file formats are 1-based.
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int k);
  // Throws a validation error unless `values` is a permutation of 1..k.
  static Permutation from_one_based(std::span<const int> values);
  static Permutation from_zero_based(std::vector<int> values);

  int size() const noexcept { return static_cast<int>(map_.size()); }
  // 0-based image of 0-based position i.
  int operator[](int i) const { return map_[static_cast<std::size_t>(i)]; }
  std::span<const int> zero_based() const noexcept { return map_; }
  std::vector<int> one_based() const;

  Permutation inverse() const;
  // (a * b)(i) = a(b(i)).
  friend Permutation compose(const Permutation& a, const Permutation& b);

  std::string to_string() const;  // "[2,1,3]"

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<int> map) : map_(std::move(map)) {}
  std::vector<int> map_;
};

// d_k: number of positions where the two permutations disagree.
int distance(const Permutation& p1, const Permutation& p2);

std::uint64_t binomial(int n, int r);
std::uint64_t factorial(int n);
// Derangement numbers: D_0 = 1, D_1 = 0, D_n = (n - 1)(D_{n-1} + D_{n-2}).
std::uint64_t derangements(int n);

// |{p : d_k(pivot, p) <= alpha}| = sum over i in {0, 2..alpha} of C(k,i) D_i.
std::uint64_t count_close(int k, int alpha);
// 1 + sum_{i=2}^{alpha} C(k,i) i!, an upper bound on count_close.
std::uint64_t count_close_upper_bound(int k, int alpha);

// Visits every permutation within distance alpha of pivot exactly once, in
// order of increasing distance, with the pivot first. Work is proportional
// to the size of the ball, not to k!.
void for_each_close(const Permutation& pivot, int alpha,
                    const std::function<void(const Permutation&)>& visit);
std::vector<Permutation> enumerate_close(const Permutation& pivot, int alpha);

// Back-to-front Fisher-Yates: for i = k-1 .. 1 swap positions i and
// uniform(i + 1). Consumes exactly k - 1 draws (8 bytes each).
Permutation random_permutation(int k, seed::RandomStream& stream);

// Label positions (0-based) sorted by label text, ties by position.
std::vector<int> alphabetical_order(const std::vector<std::string>& labels);
// `image_for_display[d]` is the 1-based image chosen for the d-th label in
// alphabetical order. Returns the wire-order response.
Permutation response_from_display(const std::vector<std::string>& labels,
                                  std::span<const int> image_for_display);

// Matching challenge: images in canonical order 1..k and the stored labels in
// pi-order. Answer: for label position i, the index of the image it
// describes; the correct answer is pi.
struct MatchingChallenge {
  std::vector<inkblot::InkblotImage> images;
  std::vector<std::string> labels;

  int k() const noexcept { return static_cast<int>(labels.size()); }

  std::vector<int> alphabetical_order() const { return matching::alphabetical_order(labels); }
  Permutation response_from_display(std::span<const int> image_for_display) const {
    return matching::response_from_display(labels, image_for_display);
  }
};

}  // namespace gotcha::matching
