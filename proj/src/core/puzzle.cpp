#include "core/puzzle.hpp"

#include <cmath>
#include <set>
#include <string>

#include "core/error.hpp"

namespace gotcha::puzzle {

void PuzzleParams::validate() const {
  require(k >= 1 && k <= matching::kMaxK, "k must be in [1, 20]");
  require(alpha >= 0 && alpha <= k, "alpha must be in [0, k]");
  require(seed_bits >= 128 && seed_bits % 8 == 0, "seed bits must be a multiple of 8, at least 128");
  require(epsilon >= 0 && delta >= 0 && mu >= 0, "security tags must be non-negative");
}

double PuzzleParams::min_entropy_bits() const {
  if (mu > 0) return mu;
  return std::log2(static_cast<double>(matching::factorial(k)));
}

G1Output g1(int k, const seed::Seed& r1, const seed::Seed& r2) {
  auto images = inkblot::generate_inkblot_images(k, r1);
  auto stream = seed::stream_from(r2, seed::kPermutationLabel);
  auto pi = matching::random_permutation(k, stream);
  G1Output out{{}, pi};
  out.presented.reserve(images.size());
  for (int i = 0; i < k; ++i) out.presented.push_back(images[static_cast<std::size_t>(pi[i])]);
  return out;
}

matching::MatchingChallenge g2(int k, const seed::Seed& r1, std::vector<std::string> labels) {
  require(static_cast<int>(labels.size()) == k,
          "expected " + std::to_string(k) + " labels, got " + std::to_string(labels.size()));
  return {inkblot::generate_inkblot_images(k, r1), std::move(labels)};
}

std::string normalize_label(std::string_view label) {
  constexpr std::string_view kSpace = " \t\r\n\v\f";
  auto first = label.find_first_not_of(kSpace);
  require(first != std::string_view::npos, "label must not be blank");
  auto last = label.find_last_not_of(kSpace);
  std::string_view trimmed = label.substr(first, last - first + 1);
  if (trimmed.size() > kMaxLabelBytes) {
    std::size_t cut = kMaxLabelBytes;
    // Back up over continuation bytes so no code point is split.
    while (cut > 0 && (static_cast<unsigned char>(trimmed[cut]) & 0xC0) == 0x80) --cut;
    trimmed = trimmed.substr(0, cut);
  }
  return std::string(trimmed);
}

std::vector<std::string> normalize_labels(const std::vector<std::string>& labels, int k) {
  require(static_cast<int>(labels.size()) == k,
          "expected " + std::to_string(k) + " labels, got " + std::to_string(labels.size()));
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(normalize_label(l));
  return out;
}

bool has_duplicate_labels(const std::vector<std::string>& labels) {
  std::set<std::string> seen(labels.begin(), labels.end());
  return seen.size() != labels.size();
}

}  // namespace gotcha::puzzle
