// Copyright 2026 The mkpwc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mkpwc/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mkpwc/rng.hpp"

namespace mkpwc {

namespace {

void require_finite_nonnegative(std::span<const double> values,
                                const char* what) {
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(std::string(what) +
                                  " must be finite and nonnegative");
    }
  }
}

}  // namespace

MkpInstance::MkpInstance(std::string name, std::vector<double> profits,
                         std::vector<double> consumption,
                         std::vector<double> capacities,
                         std::optional<double> known_best)
    : name_(std::move(name)),
      profits_(std::move(profits)),
      by_constraint_(std::move(consumption)),
      capacities_(std::move(capacities)),
      known_best_(known_best) {
  const std::size_t n = profits_.size();
  const std::size_t m = capacities_.size();
  if (n == 0) throw std::invalid_argument("instance has no items");
  if (m == 0) throw std::invalid_argument("instance has no constraints");
  if (by_constraint_.size() != n * m) {
    throw std::invalid_argument("consumption matrix must hold m*n values");
  }
  for (double p : profits_) {
    if (!std::isfinite(p)) throw std::invalid_argument("profits must be finite");
  }
  require_finite_nonnegative(by_constraint_, "consumption");
  require_finite_nonnegative(capacities_, "capacities");
  if (known_best_ && !std::isfinite(*known_best_)) {
    throw std::invalid_argument("known best must be finite");
  }

  by_item_.resize(n * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      by_item_[j * m + i] = by_constraint_[i * n + j];
    }
  }
  max_profit_ = *std::max_element(profits_.begin(), profits_.end());
}

MkpInstance MkpInstance::with_name(std::string name) const {
  MkpInstance copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

MkpInstance MkpInstance::with_known_best(std::optional<double> known_best) const {
  MkpInstance copy = *this;
  copy.known_best_ = known_best;
  return copy;
}

// ---------------------------------------------------------------------------
// OR-Library format

namespace {

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  // 1-based ordinal of the token most recently read.
  std::size_t position() const { return position_; }

  double next_number(const char* what) {
    std::string token;
    if (!(in_ >> token)) {
      throw ParseError(std::string("truncated stream: expected ") + what,
                       position_ + 1);
    }
    ++position_;
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      throw ParseError("non-numeric token '" + token + "' for " + what,
                       position_);
    }
    return value;
  }

  std::size_t next_count(const char* what) {
    const double value = next_number(what);
    if (value <= 0.0 || value != std::floor(value) || value > 1e9) {
      throw ParseError(std::string(what) + " must be a positive integer",
                       position_);
    }
    return static_cast<std::size_t>(value);
  }

  bool exhausted() {
    std::string token;
    if (in_ >> token) {
      ++position_;
      return false;
    }
    return true;
  }

 private:
  std::istream& in_;
  std::size_t position_ = 0;
};

MkpInstance read_block(TokenReader& reader, std::string name) {
  const std::size_t n = reader.next_count("item count n");
  const std::size_t m = reader.next_count("constraint count m");
  const double opt = reader.next_number("optimal value");
  const std::size_t block_start = reader.position();

  std::vector<double> profits(n);
  for (auto& p : profits) p = reader.next_number("profit");
  std::vector<double> consumption(n * m);
  for (auto& r : consumption) r = reader.next_number("consumption");
  std::vector<double> capacities(m);
  for (auto& b : capacities) b = reader.next_number("capacity");

  std::optional<double> known_best;
  if (opt != 0.0) known_best = opt;
  try {
    return MkpInstance(std::move(name), std::move(profits),
                       std::move(consumption), std::move(capacities),
                       known_best);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), block_start);
  }
}

std::string instance_name(const std::string& prefix, std::size_t ordinal) {
  return prefix.empty() ? std::to_string(ordinal)
                        : prefix + "." + std::to_string(ordinal);
}

void write_number(std::ostream& out, double value) {
  if (value == std::floor(value) && std::fabs(value) < 1e15) {
    out << static_cast<long long>(value);
    return;
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.write(buf, ptr - buf);
}

}  // namespace

std::vector<MkpInstance> parse_orlib(std::istream& in, OrlibLayout layout,
                                     const std::string& name_prefix) {
  TokenReader reader(in);
  std::size_t count = 1;
  if (layout == OrlibLayout::multi) count = reader.next_count("instance count");

  std::vector<MkpInstance> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(read_block(reader, instance_name(name_prefix, k)));
  }
  if (!reader.exhausted()) {
    throw ParseError("unconsumed tokens after the declared instances",
                     reader.position());
  }
  return out;
}

std::vector<MkpInstance> parse_orlib(const std::string& text,
                                     OrlibLayout layout,
                                     const std::string& name_prefix) {
  std::istringstream in(text);
  return parse_orlib(in, layout, name_prefix);
}

std::vector<MkpInstance> load_orlib_file(const std::string& path,
                                         OrlibLayout layout) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return parse_orlib(in, layout, std::filesystem::path(path).stem().string());
}

void write_orlib(std::ostream& out, std::span<const MkpInstance> instances,
                 OrlibLayout layout) {
  if (layout == OrlibLayout::single && instances.size() != 1) {
    throw std::invalid_argument("single layout holds exactly one instance");
  }
  if (layout == OrlibLayout::multi) out << instances.size() << '\n';
  for (const auto& inst : instances) {
    const std::size_t n = inst.items();
    out << n << ' ' << inst.constraints() << ' ';
    write_number(out, inst.known_best().value_or(0.0));
    out << '\n';
    auto write_row = [&](std::span<const double> row) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j > 0) out << ' ';
        write_number(out, row[j]);
      }
      out << '\n';
    };
    write_row(inst.profits());
    for (std::size_t i = 0; i < inst.constraints(); ++i) {
      write_row(inst.constraint_row(i));
    }
    write_row(inst.capacities());
  }
}

std::string to_orlib(std::span<const MkpInstance> instances,
                     OrlibLayout layout) {
  std::ostringstream out;
  write_orlib(out, instances, layout);
  return out.str();
}

// ---------------------------------------------------------------------------
// Well-statedness

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::nonpositive_profit: return "nonpositive_profit";
    case ViolationKind::item_exceeds_capacity: return "item_exceeds_capacity";
    case ViolationKind::slack_constraint: return "slack_constraint";
  }
  return "unknown";
}

std::string ValidationReport::describe() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << to_string(v.kind);
    if (v.constraint >= 0) out << " constraint=" << v.constraint;
    if (v.item >= 0) out << " item=" << v.item;
    out << '\n';
  }
  return out.str();
}

ValidationReport validate(const MkpInstance& inst) {
  ValidationReport report;
  const std::size_t n = inst.items();
  const std::size_t m = inst.constraints();
  for (std::size_t j = 0; j < n; ++j) {
    if (!(inst.profit(j) > 0.0)) {
      report.violations.push_back({ViolationKind::nonpositive_profit, -1,
                                   static_cast<std::ptrdiff_t>(j)});
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double r = inst.consumption(i, j);
      total += r;
      if (r > inst.capacity(i)) {
        report.violations.push_back({ViolationKind::item_exceeds_capacity,
                                     static_cast<std::ptrdiff_t>(i),
                                     static_cast<std::ptrdiff_t>(j)});
      }
    }
    if (!(inst.capacity(i) < total)) {
      report.violations.push_back({ViolationKind::slack_constraint,
                                   static_cast<std::ptrdiff_t>(i), -1});
    }
  }
  return report;
}

std::vector<std::uint8_t> Preprocessed::expand(
    std::span<const std::uint8_t> reduced_x, std::size_t original_items) const {
  if (reduced_x.size() != kept_items.size()) {
    throw std::invalid_argument("reduced solution has the wrong length");
  }
  std::vector<std::uint8_t> x(original_items, 0);
  for (std::size_t k = 0; k < kept_items.size(); ++k) {
    x[kept_items[k]] = reduced_x[k];
  }
  return x;
}

Preprocessed preprocess(const MkpInstance& inst) {
  const std::size_t n = inst.items();
  const std::size_t m = inst.constraints();

  std::vector<std::size_t> kept_items, fixed;
  for (std::size_t j = 0; j < n; ++j) {
    bool usable = inst.profit(j) > 0.0;
    for (std::size_t i = 0; usable && i < m; ++i) {
      usable = inst.consumption(i, j) <= inst.capacity(i);
    }
    (usable ? kept_items : fixed).push_back(j);
  }

  // Fixed items never enter a solution, so slackness is judged on the rest.
  std::vector<std::size_t> kept_rows, dropped;
  for (std::size_t i = 0; i < m; ++i) {
    double total = 0.0;
    for (std::size_t j : kept_items) total += inst.consumption(i, j);
    (inst.capacity(i) < total ? kept_rows : dropped).push_back(i);
  }
  if (kept_items.empty()) {
    throw std::invalid_argument("preprocessing fixed every item to zero");
  }
  if (kept_rows.empty()) {
    throw std::invalid_argument(
        "every constraint is slack; selecting all usable items is optimal");
  }

  std::vector<double> profits, consumption, capacities;
  for (std::size_t j : kept_items) profits.push_back(inst.profit(j));
  for (std::size_t i : kept_rows) {
    for (std::size_t j : kept_items) consumption.push_back(inst.consumption(i, j));
    capacities.push_back(inst.capacity(i));
  }
  return Preprocessed{
      MkpInstance(inst.name(), std::move(profits), std::move(consumption),
                  std::move(capacities), inst.known_best()),
      std::move(kept_items), std::move(fixed), std::move(dropped)};
}

// ---------------------------------------------------------------------------
// Generator

MkpInstance generate_random(const GeneratorOptions& opt) {
  if (opt.items == 0 || opt.constraints == 0) {
    throw std::invalid_argument("n and m must be at least 1");
  }
  if (!(opt.tightness > 0.0 && opt.tightness < 1.0)) {
    throw std::invalid_argument("tightness ratio alpha must lie in (0,1)");
  }
  if (!(opt.consumption_min <= opt.consumption_max) || opt.consumption_min < 0.0 ||
      !(opt.consumption_max > 0.0)) {
    throw std::invalid_argument("empty or invalid consumption range");
  }
  if (!(opt.profit_max > 0.0) ||
      (!opt.correlated &&
       (!(opt.profit_min <= opt.profit_max) || opt.profit_min < 0.0))) {
    throw std::invalid_argument("empty or invalid profit range");
  }
  if (opt.integral && std::floor(opt.consumption_max) < std::ceil(opt.consumption_min)) {
    throw std::invalid_argument("consumption range holds no integer");
  }

  const std::size_t n = opt.items;
  const std::size_t m = opt.constraints;
  Rng rng(opt.seed);

  auto draw = [&](double lo, double hi) {
    if (!opt.integral) return rng.uniform(lo, hi);
    const double first = std::ceil(lo);
    const auto span = static_cast<std::uint64_t>(std::floor(hi) - first) + 1;
    return first + static_cast<double>(rng.below(span));
  };

  std::vector<double> r(m * n), p(n), b(m);
  auto draw_item = [&](std::size_t j) {
    for (;;) {
      double column_total = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        r[i * n + j] = draw(opt.consumption_min, opt.consumption_max);
        column_total += r[i * n + j];
      }
      if (opt.correlated) {
        p[j] = column_total / static_cast<double>(m) +
               opt.profit_max * rng.uniform01();
        if (opt.integral) p[j] = std::floor(p[j]);
      } else {
        p[j] = draw(opt.profit_min, opt.profit_max);
      }
      if (p[j] > 0.0) return;
    }
  };
  for (std::size_t j = 0; j < n; ++j) draw_item(j);

  for (int round = 0; round < 10000; ++round) {
    for (std::size_t i = 0; i < m; ++i) {
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) total += r[i * n + j];
      b[i] = opt.tightness * total;
    }
    std::vector<std::size_t> offending;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        if (r[i * n + j] > b[i] || !(b[i] > 0.0)) {
          offending.push_back(j);
          break;
        }
      }
    }
    if (offending.empty()) {
      return MkpInstance("gen-n" + std::to_string(n) + "-m" + std::to_string(m) +
                             "-s" + std::to_string(opt.seed),
                         std::move(p), std::move(r), std::move(b));
    }
    for (std::size_t j : offending) draw_item(j);
  }
  throw std::invalid_argument(
      "could not generate a well-stated instance; widen n or alpha");
}

}  // namespace mkpwc
