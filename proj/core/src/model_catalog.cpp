#include "qesboson/model_catalog.hpp"

#include <sstream>

#include "qesboson/errors.hpp"

namespace qesb {

OperatorPolynomial build_hamiltonian(std::span<const ModelTerm> terms) {
  OperatorPolynomial h;
  for (const auto& t : terms) h.add_term(t.exps, t.coeff);
  return h;
}

OperatorPolynomial ModelFile::hamiltonian() const { return build_hamiltonian(terms); }

ModelFile ModelFile::from_operator(const OperatorPolynomial& h, const ConservedCharge& charge,
                                   std::optional<std::string> name) {
  ModelFile m;
  m.charge = charge;
  m.name = std::move(name);
  for (const auto& [e, c] : h.terms()) m.terms.push_back({c, e});
  return m;
}

OperatorPolynomial build_nth_harmonic(const QComplex& omega1, const QComplex& omega2,
                                      const QComplex& kappa, const QComplex& kappa_bar, int n) {
  if (n < 1) throw InvalidOrder("harmonic order must be >= 1, got " + std::to_string(n));
  const auto order = static_cast<unsigned>(n);
  OperatorPolynomial h;
  h.add_term({1, 1, 0, 0}, omega1);
  h.add_term({0, 0, 1, 1}, omega2);
  h.add_term({order, 0, 0, 1}, kappa);
  h.add_term({0, order, 1, 0}, kappa_bar);
  return h;
}

OperatorPolynomial build_shg(const QComplex& omega1, const QComplex& omega2,
                             const QComplex& kappa, const QComplex& kappa_bar) {
  return build_nth_harmonic(omega1, omega2, kappa, kappa_bar, 2);
}

ConservedCharge nth_harmonic_charge(int n) {
  if (n < 1) throw InvalidOrder("harmonic order must be >= 1, got " + std::to_string(n));
  return {1, n};
}

std::vector<std::pair<long, long>> conserving_charges(const OperatorPolynomial& h, long max) {
  std::vector<std::pair<long, long>> out;
  for (long s = 1; s <= max; ++s) {
    for (long p = 1; p <= max; ++p) {
      bool ok = true;
      for (const auto& [e, c] : h.terms()) {
        long w = s * (static_cast<long>(e.m1) - static_cast<long>(e.m2)) +
                 p * (static_cast<long>(e.m3) - static_cast<long>(e.m4));
        if (w != 0) {
          ok = false;
          break;
        }
      }
      if (ok) out.emplace_back(s, p);
    }
  }
  return out;
}

namespace {

constexpr unsigned kMaxExponent = 64;

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  for (std::string w; is >> w;) out.push_back(std::move(w));
  return out;
}

unsigned parse_exponent(const std::string& word, std::size_t line) {
  if (!word.empty() && word.front() == '-')
    throw ParseError(line, "negative exponent '" + word + "'");
  auto q = parse_rational(word);
  if (!q || q->get_den() != 1 || word.find_first_of("./eE") != std::string::npos)
    throw ParseError(line, "exponent '" + word + "' is not a non-negative integer");
  if (*q > kMaxExponent)
    throw ParseError(line, "exponent '" + word + "' exceeds " + std::to_string(kMaxExponent));
  return static_cast<unsigned>(q->get_num().get_ui());
}

long parse_weight(const std::string& word, std::size_t line) {
  auto q = parse_rational(word);
  if (!q || q->get_den() != 1 || word.find_first_of("./eE") != std::string::npos)
    throw ParseError(line, "charge weight '" + word + "' is not an integer");
  if (*q < 1) throw ParseError(line, "charge weight '" + word + "' must be positive");
  if (!q->get_num().fits_slong_p()) throw ParseError(line, "charge weight too large");
  return q->get_num().get_si();
}

Rational parse_coefficient(const std::string& word, std::size_t line) {
  auto q = parse_rational(word);
  if (!q) throw ParseError(line, "non-numeric coefficient '" + word + "'");
  return *q;
}

}  // namespace

ModelFile parse_model_file(std::string_view text) {
  std::optional<ConservedCharge> charge;
  std::optional<std::string> name;
  OperatorPolynomial h;
  std::size_t line_no = 0;
  std::size_t first_term_line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto words = split_words(raw);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string& directive = words.front();
    if (directive == "charge") {
      if (words.size() != 3) throw ParseError(line_no, "charge expects 2 fields (bad arity)");
      if (charge) throw ParseError(line_no, "duplicate charge line");
      charge.emplace(parse_weight(words[1], line_no), parse_weight(words[2], line_no));
    } else if (directive == "term") {
      if (words.size() != 7) throw ParseError(line_no, "term expects 6 fields (bad arity)");
      if (first_term_line == 0) first_term_line = line_no;
      QComplex c(parse_coefficient(words[1], line_no), parse_coefficient(words[2], line_no));
      Exponents e{parse_exponent(words[3], line_no), parse_exponent(words[4], line_no),
                  parse_exponent(words[5], line_no), parse_exponent(words[6], line_no)};
      h.add_term(e, c);
    } else if (directive == "name") {
      if (name) throw ParseError(line_no, "duplicate name line");
      if (words.size() < 2) throw ParseError(line_no, "name expects text (bad arity)");
      auto pos = raw.find("name") + 4;
      std::string rest(raw.substr(pos));
      auto first = rest.find_first_not_of(" \t\r");
      auto last = rest.find_last_not_of(" \t\r");
      name = rest.substr(first, last - first + 1);
    } else {
      throw ParseError(line_no, "unknown directive '" + directive + "'");
    }
    if (end == text.size()) break;
  }
  // Blame the first term that needed a charge, else the end of input.
  if (!charge) throw ParseError(first_term_line ? first_term_line : line_no, "missing charge line");
  return ModelFile::from_operator(h, *charge, std::move(name));
}

std::string write_model_file(const ModelFile& model) {
  std::ostringstream os;
  os << "# qesb v1\n";
  if (model.name) os << "name " << *model.name << '\n';
  os << "charge " << model.charge.s() << ' ' << model.charge.p() << '\n';
  // Round-trip through the polynomial sorts, merges and drops zeros.
  const OperatorPolynomial h = model.hamiltonian();
  for (const auto& [e, c] : h.terms()) {
    os << "term " << to_string(c.re()) << ' ' << to_string(c.im()) << ' ' << e.m1 << ' ' << e.m2
       << ' ' << e.m3 << ' ' << e.m4 << '\n';
  }
  return os.str();
}

}  // namespace qesb
