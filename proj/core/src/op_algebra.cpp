#include "qesboson/op_algebra.hpp"

#include <numeric>
#include <sstream>

#include "qesboson/errors.hpp"

namespace qesb {

OperatorPolynomial::OperatorPolynomial(const BosonMonomial& m) { add_term(m.exps, m.coeff); }

OperatorPolynomial OperatorPolynomial::identity(QComplex c) {
  return OperatorPolynomial(BosonMonomial{std::move(c), {}});
}

OperatorPolynomial OperatorPolynomial::term(QComplex c, unsigned m1, unsigned m2, unsigned m3,
                                            unsigned m4) {
  return OperatorPolynomial(BosonMonomial{std::move(c), {m1, m2, m3, m4}});
}

QComplex OperatorPolynomial::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? QComplex() : it->second;
}

void OperatorPolynomial::add_term(const Exponents& e, const QComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OperatorPolynomial& OperatorPolynomial::operator+=(const OperatorPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

OperatorPolynomial& OperatorPolynomial::operator-=(const OperatorPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

OperatorPolynomial& OperatorPolynomial::operator*=(const QComplex& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

std::vector<Integer> single_mode_reorder(unsigned annihilations, unsigned creations) {
  unsigned top = std::min(annihilations, creations);
  std::vector<Integer> out(top + 1);
  for (unsigned j = 0; j <= top; ++j)
    out[j] = binomial(annihilations, j) * binomial(creations, j) * factorial(j);
  return out;
}

OperatorPolynomial monomial_product(const BosonMonomial& lhs, const BosonMonomial& rhs) {
  OperatorPolynomial out;
  QComplex c = lhs.coeff * rhs.coeff;
  if (c.is_zero()) return out;
  // Modes commute, so (a1+)^m1 [a1^m2 (a1+)^n1] a1^n2 and the mode-2 analogue
  // reorder independently.
  auto mode1 = single_mode_reorder(lhs.exps.m2, rhs.exps.m1);
  auto mode2 = single_mode_reorder(lhs.exps.m4, rhs.exps.m3);
  for (unsigned j = 0; j < mode1.size(); ++j) {
    for (unsigned l = 0; l < mode2.size(); ++l) {
      Exponents e{lhs.exps.m1 + rhs.exps.m1 - j, lhs.exps.m2 + rhs.exps.m2 - j,
                  lhs.exps.m3 + rhs.exps.m3 - l, lhs.exps.m4 + rhs.exps.m4 - l};
      out.add_term(e, c * QComplex(Rational(mode1[j] * mode2[l])));
    }
  }
  return out;
}

OperatorPolynomial operator*(const OperatorPolynomial& a, const OperatorPolynomial& b) {
  OperatorPolynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out += monomial_product({ca, ea}, {cb, eb});
  return out;
}

OperatorPolynomial OperatorPolynomial::adjoint() const {
  // (c a1+^m1 a1^m2 a2+^m3 a2^m4)+ = c* a2+^m4 a2^m3 a1+^m2 a1^m1; the modes
  // commute so this is already normal ordered as (m2, m1, m4, m3).
  OperatorPolynomial out;
  for (const auto& [e, c] : terms_) out.add_term({e.m2, e.m1, e.m4, e.m3}, c.conj());
  return out;
}

OperatorPolynomial commutator(const OperatorPolynomial& a, const OperatorPolynomial& b) {
  return a * b - b * a;
}

std::string to_string(const OperatorPolynomial& op) {
  if (op.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto factor = [&os](const char* name, unsigned power) {
    if (power == 0) return;
    os << ' ' << name;
    if (power > 1) os << '^' << power;
  };
  for (const auto& [e, c] : op.terms()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    factor("a1+", e.m1);
    factor("a1", e.m2);
    factor("a2+", e.m3);
    factor("a2", e.m4);
  }
  return os.str();
}

namespace ops {
OperatorPolynomial a1() { return OperatorPolynomial::term(1, 0, 1, 0, 0); }
OperatorPolynomial a1dag() { return OperatorPolynomial::term(1, 1, 0, 0, 0); }
OperatorPolynomial a2() { return OperatorPolynomial::term(1, 0, 0, 0, 1); }
OperatorPolynomial a2dag() { return OperatorPolynomial::term(1, 0, 0, 1, 0); }
}  // namespace ops

ConservedCharge::ConservedCharge(long s, long p) {
  if (s < 1 || p < 1)
    throw InvalidCharge("charge weights must be positive, got (" + std::to_string(s) + "," +
                        std::to_string(p) + ")");
  long g = std::gcd(s, p);
  s_ = s / g;
  p_ = p / g;
}

OperatorPolynomial ConservedCharge::as_operator() const {
  return OperatorPolynomial::term(QComplex(s_), 1, 1, 0, 0) +
         OperatorPolynomial::term(QComplex(p_), 0, 0, 1, 1);
}

long ConservedCharge::weight(const Exponents& e) const {
  return s_ * (static_cast<long>(e.m1) - static_cast<long>(e.m2)) +
         p_ * (static_cast<long>(e.m3) - static_cast<long>(e.m4));
}

OperatorPolynomial charge_commutator_termwise(const ConservedCharge& charge,
                                              const OperatorPolynomial& h) {
  OperatorPolynomial out;
  for (const auto& [e, c] : h.terms()) out.add_term(e, c * QComplex(charge.weight(e)));
  return out;
}

bool conserves(const OperatorPolynomial& h, const ConservedCharge& charge) {
  for (const auto& [e, c] : h.terms())
    if (charge.weight(e) != 0) return false;
  return true;
}

bool is_hermitian(const OperatorPolynomial& h) { return h.adjoint() == h; }

std::int64_t charge_of_state(const ConservedCharge& charge, const FockState& state) {
  return static_cast<std::int64_t>(charge.s()) * state.n1 +
         static_cast<std::int64_t>(charge.p()) * state.n2;
}

namespace {

// <n - m2 + m1| (a+)^m1 a^m2 |n> = sqrt(n!/(n-m2)!) sqrt((n-m2+m1)!/(n-m2)!)
Integer ladder_radicand(unsigned n, unsigned creations, unsigned annihilations) {
  unsigned mid = n - annihilations;
  return falling_factorial(n, annihilations) * falling_factorial(mid + creations, creations);
}

}  // namespace

FockVector apply_to_fock(const OperatorPolynomial& h, const FockState& state) {
  FockVector out;
  for (const auto& [e, c] : h.terms()) {
    if (e.m2 > state.n1 || e.m4 > state.n2) continue;
    FockState target{state.n1 - e.m2 + e.m1, state.n2 - e.m4 + e.m3};
    ExactAmplitude amp(c, ladder_radicand(state.n1, e.m1, e.m2) *
                              ladder_radicand(state.n2, e.m3, e.m4));
    auto& slot = out[target];
    slot += amp;
    if (slot.is_zero()) out.erase(target);
  }
  return out;
}

FockVector apply_to_fock(const OperatorPolynomial& h, const FockVector& state) {
  FockVector out;
  for (const auto& [basis, amp] : state) {
    for (auto& [target, image] : apply_to_fock(h, basis)) {
      auto& slot = out[target];
      slot += image * amp;
      if (slot.is_zero()) out.erase(target);
    }
  }
  return out;
}

}  // namespace qesb
