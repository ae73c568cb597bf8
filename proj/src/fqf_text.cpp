#include <sstream>
#include <stdexcept>

#include "atlas/fqf.hpp"

namespace atlas {

namespace {
i64 ipow(i64 p, int k) {
  i64 r = 1;
  while (k-- > 0) r *= p;
  return r;
}
i64 mod_pos(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}
}  // namespace

std::string FiniteQuadraticForm::render() const {
  if (is_trivial()) return "0";
  std::vector<std::string> tokens;
  for (i64 p : primes()) {
    const JordanDecomposition& jd = jordan(p);
    for (const auto& sc : jd.scales) {
      i64 pk = ipow(p, sc.k);
      for (i64 u : sc.odd_units) {
        if (p == 2) {
          // minimize c over odd squares mod 2^{k+1}
          i64 mod = 2 * pk;
          i64 best = u;
          for (i64 s = 1; s < mod; s += 2) {
            i64 c = mod_pos(u * s % mod * s, mod);
            if (c < best) best = c;
          }
          tokens.push_back("<" + std::to_string(best) + "/" + std::to_string(pk) + ">");
        } else {
          // minimal even numerator 2a' with a' in the square class of u
          int cls = chi_p(u, p);
          i64 best = -1;
          for (i64 a = 1; a < pk && best < 0; ++a)
            if (a % p != 0 && chi_p(a, p) == cls) {
              i64 c = mod_pos(2 * a, 2 * pk);
              best = c;
            }
          tokens.push_back("<" + std::to_string(best) + "/" + std::to_string(pk) + ">");
        }
      }
      for (int i = 0; i < sc.n_u; ++i) tokens.push_back("u_" + std::to_string(sc.k));
      for (int i = 0; i < sc.n_v; ++i) tokens.push_back("v_" + std::to_string(sc.k));
    }
  }
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += "+";
    out += tokens[i];
  }
  return out;
}

FiniteQuadraticForm FiniteQuadraticForm::parse(const std::string& text) {
  FiniteQuadraticForm acc;
  std::string t;
  for (char c : text)
    if (!isspace((unsigned char)c)) t += c;
  if (t.empty() || t == "0") return acc;
  size_t pos = 0;
  while (pos < t.size()) {
    size_t next = t.find('+', pos);
    // '+' may occur only as separator; fractions hold no '+'
    std::string tok = t.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    pos = next == std::string::npos ? t.size() : next + 1;
    if (tok.empty()) throw std::domain_error("fqf parse: empty token");
    if (tok[0] == '<') {
      if (tok.back() != '>') throw std::domain_error("fqf parse: unterminated <..>");
      std::string body = tok.substr(1, tok.size() - 2);
      size_t slash = body.find('/');
      i64 num, den;
      if (slash == std::string::npos) {
        num = std::stoll(body);
        den = 1;
      } else {
        num = std::stoll(body.substr(0, slash));
        den = std::stoll(body.substr(slash + 1));
      }
      acc = orthogonal_sum(acc, cyclic_form(num, den));
    } else if (tok[0] == 'u' || tok[0] == 'v') {
      if (tok.size() < 3 || tok[1] != '_') throw std::domain_error("fqf parse: bad block token");
      int k = std::stoi(tok.substr(2));
      if (k < 1 || k > 20) throw std::domain_error("fqf parse: bad block scale");
      i64 pk = ipow(2, k);
      QMat vals(2, std::vector<Rat>(2, Rat(0)));
      if (tok[0] == 'u') {
        vals[0][1] = vals[1][0] = Rat(1, pk);
      } else {
        vals[0][0] = vals[1][1] = Rat(2, pk);
        vals[0][1] = vals[1][0] = Rat(1, pk);
      }
      acc = orthogonal_sum(acc, FiniteQuadraticForm({pk, pk}, vals));
    } else {
      throw std::domain_error("fqf parse: unknown token '" + tok + "'");
    }
  }
  return acc;
}

}  // namespace atlas
