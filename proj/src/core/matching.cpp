#include "core/matching.hpp"

#include <algorithm>
#include <numeric>

#include "core/error.hpp"

namespace gotcha::matching {

namespace {

void check_k(int k) {
  require(k >= 1 && k <= kMaxK, "k must be in [1, " + std::to_string(kMaxK) + "]");
}

void check_alpha(int k, int alpha) {
  check_k(k);
  require(alpha >= 0 && alpha <= k, "alpha must be in [0, k]");
}

// Emits every derangement of `slots` positions as an assignment slot -> slot.
void for_each_derangement(int slots, std::vector<int>& assign, std::vector<bool>& used,
                          int next, const std::function<void()>& emit) {
  if (next == slots) {
    emit();
    return;
  }
  for (int v = 0; v < slots; ++v) {
    if (v == next || used[static_cast<std::size_t>(v)]) continue;
    used[static_cast<std::size_t>(v)] = true;
    assign[static_cast<std::size_t>(next)] = v;
    for_each_derangement(slots, assign, used, next + 1, emit);
    used[static_cast<std::size_t>(v)] = false;
  }
}

}  // namespace

Permutation Permutation::identity(int k) {
  require(k >= 1, "k must be positive");
  std::vector<int> m(static_cast<std::size_t>(k));
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Permutation Permutation::from_zero_based(std::vector<int> values) {
  const int k = static_cast<int>(values.size());
  require(k >= 1, "permutation must not be empty");
  std::vector<bool> seen(values.size(), false);
  for (int v : values) {
    require(v >= 0 && v < k && !seen[static_cast<std::size_t>(v)],
            "not a permutation of 1..k");
    seen[static_cast<std::size_t>(v)] = true;
  }
  return Permutation(std::move(values));
}

Permutation Permutation::from_one_based(std::span<const int> values) {
  std::vector<int> m;
  m.reserve(values.size());
  for (int v : values) m.push_back(v - 1);
  return from_zero_based(std::move(m));
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> out(map_);
  for (int& v : out) ++v;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i)
    inv[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require(a.size() == b.size(), "permutation sizes differ");
  std::vector<int> m(b.map_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.map_[static_cast<std::size_t>(b.map_[i])];
  return Permutation(std::move(m));
}

std::string Permutation::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(map_[i] + 1);
  }
  return s + "]";
}

int distance(const Permutation& p1, const Permutation& p2) {
  require(p1.size() == p2.size(), "permutations have different k");
  int d = 0;
  for (int i = 0; i < p1.size(); ++i)
    if (p1[i] != p2[i]) ++d;
  return d;
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i)
    result = result * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return result;
}

std::uint64_t factorial(int n) {
  require(n >= 0 && n <= kMaxK, "factorial argument out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t derangements(int n) {
  require(n >= 0 && n <= kMaxK, "derangement argument out of range");
  std::uint64_t prev2 = 1, prev1 = 0;  // D_0, D_1
  if (n == 0) return 1;
  for (int i = 2; i <= n; ++i) {
    std::uint64_t cur = static_cast<std::uint64_t>(i - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return prev1;
}

std::uint64_t count_close(int k, int alpha) {
  check_alpha(k, alpha);
  std::uint64_t total = 1;
  for (int i = 2; i <= alpha; ++i) total += binomial(k, i) * derangements(i);
  return total;
}

std::uint64_t count_close_upper_bound(int k, int alpha) {
  check_alpha(k, alpha);
  std::uint64_t total = 1;
  for (int i = 2; i <= alpha; ++i) total += binomial(k, i) * factorial(i);
  return total;
}

void for_each_close(const Permutation& pivot, int alpha,
                    const std::function<void(const Permutation&)>& visit) {
  const int k = pivot.size();
  check_alpha(k, alpha);
  visit(pivot);

  std::vector<int> base(pivot.zero_based().begin(), pivot.zero_based().end());
  for (int size = 2; size <= alpha; ++size) {
    // Positions that must change, as an increasing index combination.
    std::vector<int> positions(static_cast<std::size_t>(size));
    std::iota(positions.begin(), positions.end(), 0);
    std::vector<int> assign(static_cast<std::size_t>(size));
    std::vector<bool> used(static_cast<std::size_t>(size), false);
    std::vector<int> candidate = base;
    while (true) {
      for_each_derangement(size, assign, used, 0, [&] {
        for (int j = 0; j < size; ++j)
          candidate[static_cast<std::size_t>(positions[static_cast<std::size_t>(j)])] =
              base[static_cast<std::size_t>(positions[static_cast<std::size_t>(
                  assign[static_cast<std::size_t>(j)])])];
        visit(Permutation::from_zero_based(candidate));
      });
      for (int p : positions) candidate[static_cast<std::size_t>(p)] = base[static_cast<std::size_t>(p)];

      // Next combination in lexicographic order.
      int i = size - 1;
      while (i >= 0 && positions[static_cast<std::size_t>(i)] == k - size + i) --i;
      if (i < 0) break;
      ++positions[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j)
        positions[static_cast<std::size_t>(j)] = positions[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

std::vector<Permutation> enumerate_close(const Permutation& pivot, int alpha) {
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(count_close(pivot.size(), alpha)));
  for_each_close(pivot, alpha, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

Permutation random_permutation(int k, seed::RandomStream& stream) {
  check_k(k);
  std::vector<int> m(static_cast<std::size_t>(k));
  std::iota(m.begin(), m.end(), 0);
  for (int i = k - 1; i >= 1; --i) {
    auto j = static_cast<std::size_t>(stream.uniform(static_cast<std::uint64_t>(i + 1)));
    std::swap(m[static_cast<std::size_t>(i)], m[j]);
  }
  return Permutation::from_zero_based(std::move(m));
}

std::vector<int> alphabetical_order(const std::vector<std::string>& labels) {
  std::vector<int> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return labels[static_cast<std::size_t>(a)] < labels[static_cast<std::size_t>(b)];
  });
  return order;
}

Permutation response_from_display(const std::vector<std::string>& labels,
                                  std::span<const int> image_for_display) {
  require(image_for_display.size() == labels.size(), "display response has wrong length");
  auto order = alphabetical_order(labels);
  std::vector<int> wire(labels.size());
  for (std::size_t d = 0; d < order.size(); ++d)
    wire[static_cast<std::size_t>(order[d])] = image_for_display[d];
  return Permutation::from_one_based(wire);
}

}  // namespace gotcha::matching
