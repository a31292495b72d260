#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/inkblot.hpp"
#include "core/matching.hpp"
#include "core/seedcore.hpp"

namespace gotcha::puzzle {

inline constexpr std::size_t kMaxLabelBytes = 128;

struct PuzzleParams {
  int k = 10;
  int alpha = 5;
  std::size_t seed_bits = seed::kDefaultSeedBits;
  // Declared only: distinguishing advantages and response min-entropy in bits.
  // They feed the offline-attack bound and are never measured.
  double epsilon = 0.0;
  double delta = 0.0;
  double mu = 0.0;  // 0 means log2(k!)

  void validate() const;
  double min_entropy_bits() const;
};

struct G1Output {
  std::vector<inkblot::InkblotImage> presented;  // I_{pi(1)}, ..., I_{pi(k)}
  matching::Permutation pi;
};

// Images from r1 only, presentation order from r2 only.
G1Output g1(int k, const seed::Seed& r1, const seed::Seed& r2);

// Regenerates I_1..I_k from r1 and pairs them with labels already in pi-order.
matching::MatchingChallenge g2(int k, const seed::Seed& r1, std::vector<std::string> labels);

// Trims surrounding whitespace and caps at 128 bytes without splitting a
// UTF-8 sequence. Empty after trimming is a validation error.
std::string normalize_label(std::string_view label);
std::vector<std::string> normalize_labels(const std::vector<std::string>& labels, int k);
bool has_duplicate_labels(const std::vector<std::string>& labels);

}  // namespace gotcha::puzzle
