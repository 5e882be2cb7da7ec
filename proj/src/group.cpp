#include "modgrowth/group.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "modgrowth/checked.hpp"
#include "modgrowth/error.hpp"
#include "modgrowth/parallel.hpp"

namespace modgrowth {

namespace ck = checked;

std::string to_string(ElementClass cls) {
  switch (cls) {
    case ElementClass::Elliptic:
      return "elliptic";
    case ElementClass::Parabolic:
      return "parabolic";
    case ElementClass::Hyperbolic:
      return "hyperbolic";
  }
  return "unknown";
}

GroupElement GroupElement::normalize(std::int64_t a, std::int64_t b, std::int64_t c,
                                     std::int64_t d) {
  if (ck::det2(a, b, c, d) != 1) {
    std::ostringstream msg;
    msg << "determinant of (" << a << " " << b << "; " << c << " " << d << ") is not 1";
    throw DomainError(msg.str());
  }
  if (c < 0 || (c == 0 && a < 0)) {
    return {ck::neg(a), ck::neg(b), ck::neg(c), ck::neg(d)};
  }
  return {a, b, c, d};
}

std::int64_t GroupElement::trace() const { return ck::add(a_, d_); }

ElementClass GroupElement::classify() const {
  std::int64_t t = trace();
  std::int64_t abs_t = t < 0 ? ck::neg(t) : t;
  if (abs_t < 2) return ElementClass::Elliptic;
  if (abs_t == 2) return ElementClass::Parabolic;
  return ElementClass::Hyperbolic;
}

std::int64_t GroupElement::frobenius_norm_sq() const {
  ck::i128 n = static_cast<ck::i128>(a_) * a_ + static_cast<ck::i128>(b_) * b_ +
               static_cast<ck::i128>(c_) * c_ + static_cast<ck::i128>(d_) * d_;
  return ck::narrow(n);
}

GroupElement GroupElement::inverse() const {
  // Adjugate; already unimodular.
  return normalize(d_, ck::neg(b_), ck::neg(c_), a_);
}

GroupElement GroupElement::operator*(const GroupElement& rhs) const {
  auto dot = [](std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2) {
    return ck::narrow(static_cast<ck::i128>(x1) * y1 + static_cast<ck::i128>(x2) * y2);
  };
  return normalize(dot(a_, rhs.a_, b_, rhs.c_), dot(a_, rhs.b_, b_, rhs.d_),
                   dot(c_, rhs.a_, d_, rhs.c_), dot(c_, rhs.b_, d_, rhs.d_));
}

GroupElement GroupElement::pow(std::int64_t k) const {
  GroupElement base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  GroupElement result;
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

std::string GroupElement::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  return os << "(" << g.a() << " " << g.b() << "; " << g.c() << " " << g.d() << ")";
}

GroupElement conjugate(const GroupElement& f, const GroupElement& phi) {
  return f * phi * f.inverse();
}

namespace {

// Appends every normalized element with bottom row (c, d) and
// a^2 + b^2 <= budget. Requires gcd(c, d) = 1 and the normalized bottom row
// (c > 0, or c = 0 and d = 1).
void append_bottom_row(std::int64_t c, std::int64_t d, ck::i128 budget,
                       std::vector<GroupElement>& out) {
  auto bez = ck::extended_gcd(d, c);  // x*d + y*c = 1
  const std::int64_t a0 = bez.x;
  const std::int64_t b0 = -bez.y;
  const ck::i128 row_sq = static_cast<ck::i128>(c) * c + static_cast<ck::i128>(d) * d;
  const ck::i128 cross = static_cast<ck::i128>(a0) * c + static_cast<ck::i128>(b0) * d;

  // Nearest integer to the real minimizer -cross/row_sq of the convex
  // quadratic k -> (a0 + kc)^2 + (b0 + kd)^2.
  ck::i128 num = -2 * cross + row_sq;
  ck::i128 den = 2 * row_sq;
  ck::i128 centre = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --centre;

  auto top_norm = [&](ck::i128 k) {
    ck::i128 a = a0 + k * c;
    ck::i128 b = b0 + k * d;
    return a * a + b * b;
  };
  auto emit = [&](ck::i128 k) {
    out.push_back(GroupElement::normalize(ck::narrow(a0 + k * c), ck::narrow(b0 + k * d), c, d));
  };
  if (top_norm(centre) > budget) return;
  for (ck::i128 k = centre; top_norm(k) <= budget; --k) emit(k);
  for (ck::i128 k = centre + 1; top_norm(k) <= budget; ++k) emit(k);
}

}  // namespace

std::vector<GroupElement> enumerate_norm_ball(std::int64_t max_norm_sq, unsigned threads) {
  if (max_norm_sq > kMaxNormBound) {
    throw OverflowError("norm bound " + std::to_string(max_norm_sq) +
                        " exceeds the enumerable range");
  }
  if (max_norm_sq < 2) return {};

  const std::int64_t c_max = ck::isqrt(max_norm_sq);
  const auto n_rows = static_cast<std::size_t>(c_max + 1);
  std::vector<std::vector<GroupElement>> parts(std::max(1u, threads));

  detail::parallel_chunks(n_rows, threads, [&](unsigned w, std::size_t begin, std::size_t end) {
    auto& out = parts[w];
    for (std::size_t ci = begin; ci < end; ++ci) {
      const auto c = static_cast<std::int64_t>(ci);
      const ck::i128 c_sq = static_cast<ck::i128>(c) * c;
      if (c == 0) {
        // Normalized elements with c = 0 are (1 b; 0 1).
        append_bottom_row(0, 1, static_cast<ck::i128>(max_norm_sq) - 1, out);
        continue;
      }
      const std::int64_t d_max = ck::isqrt(max_norm_sq - c_sq);
      for (std::int64_t d = -d_max; d <= d_max; ++d) {
        if (ck::gcd(c, d) != 1) continue;
        ck::i128 budget = static_cast<ck::i128>(max_norm_sq) - c_sq - static_cast<ck::i128>(d) * d;
        append_bottom_row(c, d, budget, out);
      }
    }
  });

  std::vector<GroupElement> all;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  all.reserve(total);
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<GroupElement> enumerate_norm_ball_scan(std::int64_t max_norm_sq) {
  std::vector<GroupElement> out;
  if (max_norm_sq < 2) return out;
  std::int64_t m = ck::isqrt(max_norm_sq);
  if (m * m < max_norm_sq) ++m;
  for (std::int64_t a = -m; a <= m; ++a) {
    for (std::int64_t b = -m; b <= m; ++b) {
      for (std::int64_t c = -m; c <= m; ++c) {
        for (std::int64_t d = -m; d <= m; ++d) {
          if (a * d - b * c != 1) continue;
          if (!(c > 0 || (c == 0 && a > 0))) continue;
          if (a * a + b * b + c * c + d * d > max_norm_sq) continue;
          out.push_back(GroupElement::normalize(a, b, c, d));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_norm_ball_cache(std::ostream& os, std::int64_t max_norm_sq,
                           const std::vector<GroupElement>& elements) {
  os << "# norm_ball M=" << max_norm_sq << " version=" << kNormBallCacheVersion << "\n";
  for (const auto& g : elements) {
    os << g.a() << ' ' << g.b() << ' ' << g.c() << ' ' << g.d() << '\n';
  }
}

std::vector<GroupElement> read_norm_ball_cache(std::istream& is, std::int64_t max_norm_sq) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("norm ball cache: empty file");
  std::ostringstream expected;
  expected << "# norm_ball M=" << max_norm_sq << " version=" << kNormBallCacheVersion;
  if (header != expected.str()) {
    throw std::runtime_error("norm ball cache: header mismatch: '" + header + "'");
  }
  std::vector<GroupElement> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::int64_t a, b, c, d;
    if (!(ls >> a >> b >> c >> d)) throw std::runtime_error("norm ball cache: bad line '" + line + "'");
    auto g = GroupElement::normalize(a, b, c, d);
    if (g.a() != a || g.c() != c) throw std::runtime_error("norm ball cache: unnormalized entry");
    out.push_back(g);
  }
  if (!std::is_sorted(out.begin(), out.end())) {
    throw std::runtime_error("norm ball cache: entries not in canonical order");
  }
  return out;
}

}  // namespace modgrowth
