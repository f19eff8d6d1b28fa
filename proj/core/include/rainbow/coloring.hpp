#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rainbow/progression.hpp"

namespace rainbow {

using Color = std::int32_t;

/// An equinumerous t-coloring of [t*n]: every color in {0..t-1} is used
/// exactly n times. Positions are 1-indexed, colors 0-indexed.
///
/// Instances can only be obtained through validate_equinumerous (or the
/// JSON parser, which calls it), so the invariant always holds.
class Coloring {
 public:
  [[nodiscard]] int t() const noexcept { return t_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] std::int64_t size() const noexcept { return static_cast<std::int64_t>(colors_.size()); }
  [[nodiscard]] std::optional<int> k_context() const noexcept { return k_context_; }

  /// Color of position `pos` in [1, t*n].
  [[nodiscard]] Color at(std::int64_t pos) const { return colors_[static_cast<std::size_t>(pos - 1)]; }
  [[nodiscard]] std::span<const Color> colors() const noexcept { return colors_; }

  [[nodiscard]] Coloring with_k_context(std::optional<int> k) const {
    Coloring copy = *this;
    copy.k_context_ = k;
    return copy;
  }

  friend bool operator==(const Coloring& a, const Coloring& b) {
    return a.t_ == b.t_ && a.n_ == b.n_ && a.colors_ == b.colors_;
  }

 private:
  friend Coloring validate_equinumerous(std::span<const Color>, int, int, std::optional<int>);
  friend Coloring make_unchecked_coloring(std::vector<Color>, int, int);
  friend Coloring canonicalize(const Coloring&);

  int t_ = 0;
  int n_ = 0;
  std::optional<int> k_context_;
  std::vector<Color> colors_;
};

/// Throws ValidationError naming the first violated constraint: length
/// mismatch, color out of range, or a color used a number of times != n.
Coloring validate_equinumerous(std::span<const Color> raw, int t, int n,
                               std::optional<int> k_context = std::nullopt);

/// Skips equinumerosity checks. Only meant for tests that need to build
/// deliberately broken inputs.
Coloring make_unchecked_coloring(std::vector<Color> raw, int t, int n);

struct RainbowVerdict {
  ArithmeticProgression ap;
  bool is_rainbow = false;
  std::optional<Color> repeated_color;  // smallest color seen twice, when not rainbow
};

RainbowVerdict is_rainbow(const Coloring& c, const ArithmeticProgression& ap);

/// Smallest rainbow AP(k) in (diff, first) order, if any.
std::optional<ArithmeticProgression> find_rainbow_ap(const Coloring& c, int k);

/// Number of non-rainbow AP(k) in [t*n], by full enumeration.
std::uint64_t count_non_rainbow(const Coloring& c, int k);

/// Relabel colors in order of first occurrence.
Coloring canonicalize(const Coloring& c);

[[nodiscard]] bool is_canonical(std::span<const Color> colors);

// Coloring document: {"t": int, "n": int, "k": int|null, "colors": [int, ...]}
nlohmann::json to_json(const Coloring& c);
Coloring coloring_from_json(const nlohmann::json& doc);
Coloring parse_coloring_document(const std::string& text);

}  // namespace rainbow
