#include "symg/ffield.hpp"

#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "doctest.h"
#include "symg/errors.hpp"
#include "symg/rng.hpp"

using namespace symg;

namespace {

template <class Fn>
std::optional<Errc> thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const SymgError& e) {
    return e.code;
  }
  return std::nullopt;
}

// Brute-force polynomial helpers over GF(p), p prime, coefficients ascending,
// written independently of the library so the modulus choice has a second
// opinion.
using BPoly = std::vector<uint64_t>;

BPoly bmod(BPoly a, const BPoly& b, uint64_t p) {
  while (a.size() >= b.size()) {
    uint64_t lead = a.back();  // b is monic
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = (a[shift + i] + (p - b[i] % p) * lead) % p;
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) break;
  }
  return a;
}

// All monic degree-d polynomials over GF(p), as ascending coefficient vectors.
std::vector<BPoly> monics(uint64_t p, uint32_t d) {
  std::vector<BPoly> out;
  uint64_t total = 1;
  for (uint32_t i = 0; i < d; ++i) total *= p;
  for (uint64_t t = 0; t < total; ++t) {
    BPoly f(d + 1, 0);
    uint64_t rest = t;
    for (uint32_t i = 0; i < d; ++i) {
      f[i] = rest % p;
      rest /= p;
    }
    f[d] = 1;
    out.push_back(f);
  }
  return out;
}

bool brute_irreducible(const BPoly& f, uint64_t p) {
  uint32_t n = static_cast<uint32_t>(f.size()) - 1;
  if (n == 0) return false;
  for (uint32_t d = 1; 2 * d <= n; ++d)
    for (const BPoly& g : monics(p, d))
      if (bmod(f, g, p).empty()) return false;
  return true;
}

// Lexicographically first irreducible under the (c_{k-1}, ..., c_0) order,
// found by the same index walk the library documents but with the brute
// irreducibility test.
BPoly brute_smallest_irreducible(uint64_t p, uint32_t k) {
  for (const BPoly& f : monics(p, k))
    if (brute_irreducible(f, p)) return f;
  return {};
}

}  // namespace

TEST_CASE("make_field rejects bad parameters") {
  CHECK(thrown_code([] { make_field(2, 1); }) == Errc::NotOddPrime);
  CHECK(thrown_code([] { make_field(9, 1); }) == Errc::NotOddPrime);
  CHECK(thrown_code([] { make_field(1, 1); }) == Errc::NotOddPrime);
  CHECK(thrown_code([] { make_field(0, 1); }) == Errc::NotOddPrime);
  CHECK(thrown_code([] { make_field(3, 0); }) == Errc::DegreeOutOfRange);
  CHECK(thrown_code([] { make_field(3, 25); }) == Errc::DegreeOutOfRange);
  // 2^63 overflow: 3^40 would be fine as a value but k is capped first.
  CHECK(thrown_code([] { make_field(1000003, 4); }) == Errc::DegreeOutOfRange);
}

TEST_CASE("fields are interned") {
  FieldRef a = make_field(3, 2);
  FieldRef b = make_field(3, 2);
  CHECK(a.get() == b.get());
  CHECK(a->same(*b));
  FieldRef c = make_field(3, 1);
  CHECK(a.get() != c.get());
}

TEST_CASE("interning is thread safe") {
  FieldRef r1, r2;
  std::thread t1([&] { r1 = make_field(5, 3); });
  std::thread t2([&] { r2 = make_field(5, 3); });
  t1.join();
  t2.join();
  CHECK(r1.get() == r2.get());
}

TEST_CASE("modulus is the least monic irreducible in (c_{k-1},...,c_0) order") {
  // Frozen expectations, ascending coefficients, monic leading 1.
  CHECK(make_field(3, 1)->modulus() == std::vector<uint32_t>{0, 1});
  CHECK(make_field(3, 2)->modulus() == std::vector<uint32_t>{1, 0, 1});       // x^2+1
  CHECK(make_field(3, 4)->modulus() == std::vector<uint32_t>{2, 1, 0, 0, 1});  // x^4+x+2
  CHECK(make_field(7, 2)->modulus() == std::vector<uint32_t>{1, 0, 1});       // x^2+1

  // Cross-check against the brute-force scan for every small (p, k).
  for (uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
    for (uint32_t k : {2u, 3u}) {
      BPoly expect = brute_smallest_irreducible(p, k);
      const std::vector<uint32_t>& got = make_field(p, k)->modulus();
      REQUIRE(got.size() == expect.size());
      for (size_t i = 0; i < expect.size(); ++i) CHECK(got[i] == expect[i]);
    }
  }
}

TEST_CASE("prime field arithmetic matches integer arithmetic") {
  FieldRef f = make_field(7, 1);
  for (uint64_t a = 0; a < 7; ++a) {
    for (uint64_t b = 0; b < 7; ++b) {
      CHECK(f->to_uint(f->add(f->from_uint(a), f->from_uint(b))) == (a + b) % 7);
      CHECK(f->to_uint(f->sub(f->from_uint(a), f->from_uint(b))) == (a + 7 - b) % 7);
      CHECK(f->to_uint(f->mul(f->from_uint(a), f->from_uint(b))) == (a * b) % 7);
    }
  }
  CHECK(f->to_uint(f->from_int(-1)) == 6);
  CHECK(f->to_uint(f->from_int(-15)) == 6);
  CHECK(f->to_uint(f->from_int(14)) == 0);
}

TEST_CASE("GF(9) worked values") {
  FieldRef f = make_field(3, 2);
  FVal x = f->from_uint(3);  // the residue class of x
  CHECK(f->to_uint(f->mul(x, x)) == 2);  // x^2 = -1 = 2 under modulus x^2+1
  CHECK(f->frobenius(x, 1) == f->from_uint(6));  // x^3 = 2x
  CHECK(f->frobenius(x, 2) == x);
  CHECK(f->to_uint(f->pow(x, 4)) == 1);  // x^4 = (x^2)^2 = (-1)^2
  CHECK(f->to_uint(f->pow(x, 2)) == 2);  // so x has order exactly 4
}

TEST_CASE("field axioms hold on sampled triples") {
  Rng rng(20260822);
  for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{
           {3, 1}, {7, 1}, {3, 2}, {3, 3}, {5, 3}, {7, 2}, {11, 2}}) {
    FieldRef f = make_field(p, k);
    for (int it = 0; it < 150; ++it) {
      FVal a = f->sample(rng), b = f->sample(rng), c = f->sample(rng);
      CHECK(f->add(a, b) == f->add(b, a));
      CHECK(f->mul(a, b) == f->mul(b, a));
      CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
      CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
      CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      CHECK(f->add(a, f->neg(a)) == f->zero());
      CHECK(f->sub(a, b) == f->add(a, f->neg(b)));
      if (!f->is_zero(a)) {
        CHECK(f->mul(a, f->inv(a)) == f->one());
        CHECK(f->div(b, a) == f->mul(b, f->inv(a)));
      }
    }
  }
}

TEST_CASE("index map is a bijection and value order is stable") {
  for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{3, 2}, {5, 2}, {3, 3}}) {
    FieldRef f = make_field(p, k);
    for (uint64_t i = 0; i < f->size(); ++i) {
      FVal v = f->from_uint(i);
      CHECK(f->to_uint(v) == i);
    }
  }
}

TEST_CASE("every nonzero element has multiplicative order dividing q-1") {
  for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    FieldRef f = make_field(p, k);
    for (uint64_t i = 1; i < f->size(); ++i) {
      FVal v = f->from_uint(i);
      CHECK(f->is_one(f->pow(v, static_cast<int64_t>(f->size() - 1))));
      CHECK(f->mul(v, f->inv(v)) == f->one());
    }
  }
}

TEST_CASE("frobenius is a field automorphism fixing the prime field") {
  Rng rng(77);
  FieldRef f = make_field(5, 3);
  for (int it = 0; it < 100; ++it) {
    FVal a = f->sample(rng), b = f->sample(rng);
    CHECK(f->frobenius(f->add(a, b), 1) == f->add(f->frobenius(a, 1), f->frobenius(b, 1)));
    CHECK(f->frobenius(f->mul(a, b), 1) == f->mul(f->frobenius(a, 1), f->frobenius(b, 1)));
    CHECK(f->frobenius(a, 1) == f->pow(a, 5));
    CHECK(f->frobenius(f->frobenius(a, 1), 2) == a);  // total p^3 power
    CHECK(f->frobenius(a, 3) == a);
  }
  for (uint64_t c = 0; c < 5; ++c) CHECK(f->frobenius(f->constant(c), 1) == f->constant(c));
}

TEST_CASE("pow handles negative exponents and edge cases") {
  FieldRef f = make_field(3, 2);
  FVal x = f->from_uint(3);
  CHECK(f->is_one(f->pow(x, 0)));
  CHECK(f->is_one(f->pow(f->zero(), 0)));
  CHECK(f->is_zero(f->pow(f->zero(), 5)));
  CHECK(f->pow(x, -1) == f->inv(x));
  CHECK(f->pow(x, -3) == f->inv(f->pow(x, 3)));
  CHECK(thrown_code([&] { f->inv(f->zero()); }) == Errc::DivisionByZero);
  CHECK(thrown_code([&] { f->div(x, f->zero()); }) == Errc::DivisionByZero);
}

TEST_CASE("element wrapper catches mixed-field arithmetic") {
  FieldRef f = make_field(3, 1);
  FieldRef g = make_field(5, 1);
  FieldElement a = fe(f, 2), b = fe(f, 2), c = fe(g, 2);
  CHECK(a == b);
  CHECK(!(a == c));
  CHECK((a + b).field == f.get());
  CHECK(f->to_uint((a * b).v) == 1);
  CHECK(thrown_code([&] { (void)(a + c); }) == Errc::MixedFields);
  CHECK(thrown_code([&] { (void)(a * c); }) == Errc::MixedFields);
}

TEST_CASE("min_fixed_degree finds the subfield an element generates") {
  FieldRef f = make_field(3, 4);
  FVal x = f->from_uint(3);
  CHECK(min_fixed_degree(*f, {}) == 1);
  CHECK(min_fixed_degree(*f, {f->one()}) == 1);
  CHECK(min_fixed_degree(*f, {f->constant(2)}) == 1);
  CHECK(min_fixed_degree(*f, {x}) == 4);
  // x^((81-1)/(9-1)) generates the multiplicative group of the degree-2
  // subfield, so it is fixed by the square of Frobenius but not Frobenius.
  FVal sub = f->pow(x, 10);
  CHECK(f->frobenius(sub, 2) == sub);
  CHECK(f->frobenius(sub, 1) != sub);
  CHECK(min_fixed_degree(*f, {sub}) == 2);
  CHECK(min_fixed_degree(*f, {sub, x}) == 4);
}

TEST_CASE("moderately large extensions construct and round-trip") {
  FieldRef f = make_field(3, 13);
  CHECK(f->size() == 1594323ull);
  Rng rng(5);
  for (int it = 0; it < 20; ++it) {
    FVal a = f->sample(rng);
    if (f->is_zero(a)) continue;
    CHECK(f->mul(a, f->inv(a)) == f->one());
    CHECK(f->frobenius(a, 13) == a);
  }
}
