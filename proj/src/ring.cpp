#include "mgi/ring.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace mgi {

namespace {

std::uint64_t mod_of(const RingSpec& spec) { return spec.modulus; }

std::uint64_t norm(const RingSpec& spec, long long v) {
  long long m = static_cast<long long>(mod_of(spec));
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

const rational& as_rat(const RingElem& a) { return std::get<rational>(a); }

std::uint64_t egcd_inverse(std::uint64_t a, std::uint64_t m) {
  // Extended Euclid; caller guarantees gcd(a, m) = 1 and m >= 2.
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(m), new_r = static_cast<long long>(a);
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<long long>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::uint64_t d = 3; d * d <= m; d += 2)
    if (m % d == 0) return false;
  return true;
}

RingSpec make_ring(ring_kind kind, std::uint32_t modulus) {
  RingSpec spec{kind, modulus};
  switch (kind) {
    case ring_kind::prime_field:
      if (!is_prime(modulus))
        fail(errc::not_field, "gf modulus " + std::to_string(modulus) + " is not prime");
      break;
    case ring_kind::modular_ring:
      if (modulus < 2)
        throw std::invalid_argument("zmod modulus must be >= 2");
      break;
    case ring_kind::rationals:
      spec.modulus = 0;
      break;
  }
  return spec;
}

RingSpec parse_ring(const std::string& s) {
  auto parse_mod = [&](std::size_t off) -> std::uint32_t {
    const std::string body = s.substr(off);
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad ring spec '" + s + "'");
    unsigned long v = std::stoul(body);
    if (v > 0xffffffffUL) throw std::invalid_argument("ring modulus too large");
    return static_cast<std::uint32_t>(v);
  };
  if (s == "q" || s == "Q") return make_ring(ring_kind::rationals);
  if (s.rfind("gf:", 0) == 0) return make_ring(ring_kind::prime_field, parse_mod(3));
  if (s.rfind("zmod:", 0) == 0) return make_ring(ring_kind::modular_ring, parse_mod(5));
  throw std::invalid_argument("bad ring spec '" + s + "' (want gf:P, zmod:M, or q)");
}

std::string ring_to_string(const RingSpec& spec) {
  switch (spec.kind) {
    case ring_kind::prime_field: return "gf:" + std::to_string(spec.modulus);
    case ring_kind::modular_ring: return "zmod:" + std::to_string(spec.modulus);
    case ring_kind::rationals: return "q";
  }
  return "?";
}

RingElem ring_zero(const RingSpec& spec) {
  if (spec.finite()) return std::uint64_t{0};
  return rational(0);
}

RingElem ring_one(const RingSpec& spec) {
  if (spec.finite()) return std::uint64_t{1} % mod_of(spec);
  return rational(1);
}

RingElem ring_of(const RingSpec& spec, long long v) {
  if (spec.finite()) return norm(spec, v);
  return rational(v);
}

RingElem ring_of(const RingSpec& spec, const rational& q) {
  if (!spec.finite()) return q;
  if (denominator(q) != 1)
    throw std::invalid_argument("non-integer value for finite ring");
  rational r = q;
  rational m(mod_of(spec));
  boost::multiprecision::cpp_int n = numerator(q) % numerator(m);
  if (n < 0) n += numerator(m);
  return static_cast<std::uint64_t>(n);
}

bool is_zero(const RingSpec& spec, const RingElem& a) { return a == ring_zero(spec); }
bool is_one(const RingSpec& spec, const RingElem& a) { return a == ring_one(spec); }

RingElem ring_add(const RingSpec& spec, const RingElem& a, const RingElem& b) {
  if (spec.finite()) return (residue(a) + residue(b)) % mod_of(spec);
  return as_rat(a) + as_rat(b);
}

RingElem ring_sub(const RingSpec& spec, const RingElem& a, const RingElem& b) {
  if (spec.finite()) return (residue(a) + mod_of(spec) - residue(b)) % mod_of(spec);
  return as_rat(a) - as_rat(b);
}

RingElem ring_mul(const RingSpec& spec, const RingElem& a, const RingElem& b) {
  if (spec.finite()) return (residue(a) * residue(b)) % mod_of(spec);
  return as_rat(a) * as_rat(b);
}

RingElem ring_neg(const RingSpec& spec, const RingElem& a) {
  if (spec.finite()) {
    std::uint64_t v = residue(a);
    return v == 0 ? std::uint64_t{0} : mod_of(spec) - v;
  }
  return -as_rat(a);
}

bool is_unit(const RingSpec& spec, const RingElem& a) {
  if (!spec.finite()) return as_rat(a) != 0;
  return std::gcd(residue(a), mod_of(spec)) == 1;
}

RingElem ring_inv(const RingSpec& spec, const RingElem& a) {
  if (!is_unit(spec, a))
    fail(errc::non_unit, elem_to_string(spec, a) + " has no inverse in " + ring_to_string(spec));
  if (spec.finite()) return egcd_inverse(residue(a), mod_of(spec));
  return rational(1) / as_rat(a);
}

RingElem ring_pow(const RingSpec& spec, const RingElem& a, std::uint64_t e) {
  RingElem acc = ring_one(spec);
  RingElem base = a;
  while (e > 0) {
    if (e & 1) acc = ring_mul(spec, acc, base);
    base = ring_mul(spec, base, base);
    e >>= 1;
  }
  return acc;
}

std::vector<RingElem> ring_elements(const RingSpec& spec) {
  if (!spec.finite()) fail(errc::infinite_ring, "cannot enumerate Q");
  std::vector<RingElem> out;
  out.reserve(mod_of(spec));
  for (std::uint64_t v = 0; v < mod_of(spec); ++v) out.push_back(v);
  return out;
}

std::vector<RingElem> units(const RingSpec& spec) {
  if (!spec.finite()) fail(errc::infinite_ring, "cannot enumerate units of Q");
  std::vector<RingElem> out;
  for (std::uint64_t v = 0; v < mod_of(spec); ++v)
    if (std::gcd(v, mod_of(spec)) == 1) out.push_back(v);
  return out;
}

PowerClasses nth_power_classes(const RingSpec& spec, std::uint64_t n) {
  if (!spec.finite()) fail(errc::infinite_ring, "power classes need a finite field");
  if (spec.kind != ring_kind::prime_field)
    fail(errc::not_field, "power classes defined over fields only");
  std::vector<std::uint64_t> pow_set;
  for (std::uint64_t v = 1; v < mod_of(spec); ++v)
    pow_set.push_back(residue(ring_pow(spec, RingElem{v}, n)));
  std::sort(pow_set.begin(), pow_set.end());
  pow_set.erase(std::unique(pow_set.begin(), pow_set.end()), pow_set.end());
  PowerClasses out;
  for (std::uint64_t v : pow_set) out.powers.push_back(v);
  out.index = (mod_of(spec) - 1) / pow_set.size();
  return out;
}

std::uint64_t residue(const RingElem& a) { return std::get<std::uint64_t>(a); }

std::string elem_to_string(const RingSpec& spec, const RingElem& a) {
  if (spec.finite()) return std::to_string(residue(a));
  const rational& q = as_rat(a);
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

RingElem elem_from_string(const RingSpec& spec, const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty ring element");
  auto is_int = [](const std::string& t) {
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    return i < t.size() && t.find_first_not_of("0123456789", i) == std::string::npos;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_int(s)) throw std::invalid_argument("bad ring element '" + s + "'");
    return ring_of(spec, rational(boost::multiprecision::cpp_int(s)));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) throw std::invalid_argument("bad ring element '" + s + "'");
  rational d{boost::multiprecision::cpp_int(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return ring_of(spec, rational(boost::multiprecision::cpp_int(num)) / d);
}

std::size_t elem_hash(const RingElem& a) {
  if (std::holds_alternative<std::uint64_t>(a))
    return std::hash<std::uint64_t>{}(std::get<std::uint64_t>(a));
  const rational& q = std::get<rational>(a);
  std::size_t h1 = std::hash<std::string>{}(numerator(q).str());
  std::size_t h2 = std::hash<std::string>{}(denominator(q).str());
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

}  // namespace mgi
