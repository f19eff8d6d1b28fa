#include "rainbow/coloring.hpp"

#include <algorithm>
#include <stdexcept>

#include "rainbow/error.hpp"

namespace rainbow {

Coloring validate_equinumerous(std::span<const Color> raw, int t, int n,
                               std::optional<int> k_context) {
  if (t < 1) throw ValidationError("t must be >= 1, got " + std::to_string(t));
  if (n < 1) throw ValidationError("n must be >= 1, got " + std::to_string(n));
  const auto expected = static_cast<std::size_t>(t) * static_cast<std::size_t>(n);
  if (raw.size() != expected) {
    throw ValidationError("length mismatch: expected t*n = " + std::to_string(expected) +
                          " colors, got " + std::to_string(raw.size()));
  }
  std::vector<std::int64_t> used(static_cast<std::size_t>(t), 0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Color c = raw[i];
    if (c < 0 || c >= t) {
      throw ValidationError("color " + std::to_string(c) + " at position " + std::to_string(i + 1) +
                            " is out of range [0, " + std::to_string(t - 1) + "]");
    }
    ++used[static_cast<std::size_t>(c)];
  }
  for (int c = 0; c < t; ++c) {
    if (used[static_cast<std::size_t>(c)] != n) {
      throw ValidationError("color " + std::to_string(c) + " used " +
                            std::to_string(used[static_cast<std::size_t>(c)]) +
                            " times, expected n = " + std::to_string(n));
    }
  }
  if (k_context && *k_context < 3) {
    throw ValidationError("k must be >= 3, got " + std::to_string(*k_context));
  }
  Coloring out;
  out.t_ = t;
  out.n_ = n;
  out.k_context_ = k_context;
  out.colors_.assign(raw.begin(), raw.end());
  return out;
}

Coloring make_unchecked_coloring(std::vector<Color> raw, int t, int n) {
  Coloring out;
  out.t_ = t;
  out.n_ = n;
  out.colors_ = std::move(raw);
  return out;
}

RainbowVerdict is_rainbow(const Coloring& c, const ArithmeticProgression& ap) {
  check_progression(ap);
  if (ap.last() > c.size()) {
    throw std::invalid_argument("progression leaves [1, " + std::to_string(c.size()) + "]");
  }
  RainbowVerdict verdict{ap, true, std::nullopt};
  std::vector<Color> seen;
  seen.reserve(static_cast<std::size_t>(ap.length));
  for (int i = 0; i < ap.length; ++i) seen.push_back(c.at(ap.term(i)));
  std::sort(seen.begin(), seen.end());
  const auto dup = std::adjacent_find(seen.begin(), seen.end());
  if (dup != seen.end()) {
    verdict.is_rainbow = false;
    verdict.repeated_color = *dup;
  }
  return verdict;
}

namespace {

// Rainbow test without allocation; `mark` must be all-zero on entry and is
// restored before returning.
bool terms_distinct(const Coloring& c, std::int64_t first, std::int64_t d, int k,
                    std::vector<std::uint8_t>& mark) {
  int i = 0;
  bool distinct = true;
  for (; i < k; ++i) {
    auto& slot = mark[static_cast<std::size_t>(c.at(first + i * d))];
    if (slot) {
      distinct = false;
      break;
    }
    slot = 1;
  }
  for (int j = 0; j < i; ++j) mark[static_cast<std::size_t>(c.at(first + j * d))] = 0;
  return distinct;
}

}  // namespace

std::optional<ArithmeticProgression> find_rainbow_ap(const Coloring& c, int k) {
  if (k < 3) throw std::invalid_argument("k must be >= 3");
  if (k > c.t()) return std::nullopt;  // pigeonhole
  const std::int64_t m = c.size();
  std::vector<std::uint8_t> mark(static_cast<std::size_t>(c.t()), 0);
  for (std::int64_t d = 1; 1 + (k - 1) * d <= m; ++d) {
    for (std::int64_t x = 1; x + (k - 1) * d <= m; ++x) {
      if (terms_distinct(c, x, d, k, mark)) return ArithmeticProgression{x, d, k};
    }
  }
  return std::nullopt;
}

std::uint64_t count_non_rainbow(const Coloring& c, int k) {
  if (k < 3) throw std::invalid_argument("k must be >= 3");
  if (c.size() > kEnumerationGuard) {
    throw GuardViolation("count_non_rainbow: t*n = " + std::to_string(c.size()) +
                         " exceeds enumeration guard");
  }
  if (k > c.t()) return count_aps_formula(c.size(), k);
  std::vector<std::uint8_t> mark(static_cast<std::size_t>(c.t()), 0);
  std::uint64_t bad = 0;
  const std::int64_t m = c.size();
  for (std::int64_t d = 1; 1 + (k - 1) * d <= m; ++d) {
    for (std::int64_t x = 1; x + (k - 1) * d <= m; ++x) {
      if (!terms_distinct(c, x, d, k, mark)) ++bad;
    }
  }
  return bad;
}

bool is_canonical(std::span<const Color> colors) {
  Color next = 0;
  for (const Color c : colors) {
    if (c > next) return false;
    if (c == next) ++next;
  }
  return true;
}

Coloring canonicalize(const Coloring& c) {
  std::vector<Color> relabel(static_cast<std::size_t>(c.t()), -1);
  std::vector<Color> out;
  out.reserve(static_cast<std::size_t>(c.size()));
  Color next = 0;
  for (const Color col : c.colors()) {
    auto& target = relabel[static_cast<std::size_t>(col)];
    if (target < 0) target = next++;
    out.push_back(target);
  }
  // Relabeling permutes the per-color counts, so the invariant carries over.
  Coloring result = make_unchecked_coloring(std::move(out), c.t(), c.n());
  result.k_context_ = c.k_context();
  return result;
}

nlohmann::json to_json(const Coloring& c) {
  nlohmann::json doc;
  doc["t"] = c.t();
  doc["n"] = c.n();
  doc["k"] = c.k_context() ? nlohmann::json(*c.k_context()) : nlohmann::json(nullptr);
  doc["colors"] = std::vector<Color>(c.colors().begin(), c.colors().end());
  return doc;
}

namespace {

int require_int_field(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) {
    throw ValidationError(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

}  // namespace

Coloring coloring_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("coloring document must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "t" && key != "n" && key != "k" && key != "colors") {
      throw ValidationError("unexpected field \"" + key + "\"");
    }
  }
  const int t = require_int_field(doc, "t");
  const int n = require_int_field(doc, "n");
  std::optional<int> k;
  if (!doc.contains("k")) throw ValidationError("missing field \"k\"");
  if (!doc.at("k").is_null()) k = require_int_field(doc, "k");
  if (!doc.contains("colors") || !doc.at("colors").is_array()) {
    throw ValidationError("field \"colors\" must be an array");
  }
  std::vector<Color> raw;
  raw.reserve(doc.at("colors").size());
  for (const auto& v : doc.at("colors")) {
    if (!v.is_number_integer()) throw ValidationError("colors must be integers");
    raw.push_back(v.get<Color>());
  }
  return validate_equinumerous(raw, t, n, k);
}

Coloring parse_coloring_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return coloring_from_json(doc);
}

}  // namespace rainbow
