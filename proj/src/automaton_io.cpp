#include "affa/automaton_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "affa/errors.hpp"

namespace affa {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

// Lines with comments stripped and blank lines dropped.
std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    Line line{number, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

Rational parse_entry(const std::string& tok, int line) {
  try {
    return parse_rational(tok);
  } catch (const StructuralError& e) {
    throw ParseError(line, e.what());
  }
}

int parse_flag(const std::string& tok, int line) {
  if (tok == "0") return 0;
  if (tok == "1") return 1;
  throw ParseError(line, "expected 0 or 1, got '" + tok + "'");
}

class Parser {
 public:
  explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  Machine run() {
    const Line& head = need("header");
    if (head.tokens.size() != 2 || head.tokens[1] != "v1" ||
        (head.tokens[0] != "pfa" && head.tokens[0] != "afa"))
      throw ParseError(head.number, "expected 'pfa v1' or 'afa v1'");
    bool is_pfa = head.tokens[0] == "pfa";

    const Line& st = need("states");
    if (st.tokens.size() != 2 || st.tokens[0] != "states")
      throw ParseError(st.number, "expected 'states <count>'");
    long k = 0;
    try {
      k = std::stol(st.tokens[1]);
    } catch (...) {
      throw ParseError(st.number, "bad state count '" + st.tokens[1] + "'");
    }
    if (k < 1) throw ParseError(st.number, "state count must be at least 1");
    k_ = static_cast<std::size_t>(k);

    const Line& al = need("alphabet");
    if (al.tokens.size() < 2 || al.tokens[0] != "alphabet")
      throw ParseError(al.number, "expected 'alphabet <symbol>...'");
    alphabet_.symbols.assign(al.tokens.begin() + 1, al.tokens.end());
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      for (std::size_t j = i + 1; j < alphabet_.size(); ++j)
        if (alphabet_.symbols[i] == alphabet_.symbols[j])
          throw ParseError(al.number, "duplicate alphabet symbol '" + alphabet_.symbols[i] + "'");

    const Line& init = need("initial");
    if (init.tokens.empty() || init.tokens[0] != "initial")
      throw ParseError(init.number, "expected 'initial <rational>...'");
    if (init.tokens.size() != k_ + 1)
      throw ParseError(init.number, "initial vector needs exactly " + std::to_string(k_) +
                                        " entries");
    RatVec x;
    for (std::size_t i = 1; i < init.tokens.size(); ++i) {
      Rational v = parse_entry(init.tokens[i], init.number);
      if (is_pfa && v < 0)
        throw ParseError(init.number, "initial vector of a pfa cannot have negative entries");
      x.push_back(v);
    }
    if (vec_sum(x) != 1)
      throw ParseError(init.number, "initial vector entries must sum to 1, got " +
                                        format_rational(vec_sum(x)));

    const Line& fin = need("final");
    if (fin.tokens.empty() || fin.tokens[0] != "final")
      throw ParseError(fin.number, "expected 'final <0|1>...'");
    if (fin.tokens.size() != k_ + 1)
      throw ParseError(fin.number,
                       "final vector needs exactly " + std::to_string(k_) + " entries");
    std::vector<int> flags;
    for (std::size_t i = 1; i < fin.tokens.size(); ++i)
      flags.push_back(parse_flag(fin.tokens[i], fin.number));

    std::vector<RatMat> mats(alphabet_.size());
    std::vector<bool> seen(alphabet_.size(), false);
    while (pos_ < lines_.size()) {
      const Line& mh = lines_[pos_++];
      if (mh.tokens.size() != 2 || mh.tokens[0] != "matrix")
        throw ParseError(mh.number, "expected 'matrix <symbol>'");
      int sym = alphabet_.index_of(mh.tokens[1]);
      if (sym < 0)
        throw ParseError(mh.number, "matrix for unknown symbol '" + mh.tokens[1] + "'");
      if (seen[sym])
        throw ParseError(mh.number, "duplicate matrix for symbol '" + mh.tokens[1] + "'");
      seen[sym] = true;
      RatMat m(k_, k_);
      int last_row_line = mh.number;
      for (std::size_t i = 0; i < k_; ++i) {
        const Line& row = need("matrix row");
        if (row.tokens.size() != k_)
          throw ParseError(row.number, "matrix row needs exactly " + std::to_string(k_) +
                                           " entries");
        for (std::size_t j = 0; j < k_; ++j) {
          Rational v = parse_entry(row.tokens[j], row.number);
          if (is_pfa && v < 0)
            throw ParseError(row.number, "stochastic matrix entries cannot be negative");
          m.at(i, j) = v;
        }
        last_row_line = row.number;
      }
      for (std::size_t j = 0; j < k_; ++j) {
        Rational s = col_sum(m, j);
        if (s != 1)
          throw ParseError(last_row_line, "column " + std::to_string(j + 1) + " of matrix '" +
                                              mh.tokens[1] + "' sums to " + format_rational(s) +
                                              ", expected 1/1");
      }
      mats[sym] = std::move(m);
    }
    for (std::size_t s = 0; s < alphabet_.size(); ++s)
      if (!seen[s])
        throw ParseError(lines_.back().number,
                         "missing matrix for symbol '" + alphabet_.symbols[s] + "'");

    if (is_pfa) {
      Pfa p{k_, alphabet_, std::move(x), std::move(mats), std::move(flags)};
      validate(p);  // belt and braces; per-line checks above should have caught everything
      return p;
    }
    Afa a{k_, alphabet_, std::move(x), std::move(mats), std::move(flags)};
    validate(a);
    return a;
  }

 private:
  const Line& need(const char* what) {
    if (pos_ >= lines_.size()) {
      int last = lines_.empty() ? 1 : lines_.back().number;
      throw ParseError(last, std::string("unexpected end of file, missing ") + what);
    }
    return lines_[pos_++];
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t k_ = 0;
  Alphabet alphabet_;
};

template <class M>
void serialize_common(std::ostringstream& out, const char* tag, const M& m,
                      const std::vector<int>& flags) {
  out << tag << " v1\n";
  out << "states " << m.k << "\n";
  out << "alphabet";
  for (const auto& s : m.alphabet.symbols) out << " " << s;
  out << "\n";
  out << "initial";
  for (const auto& v : m.x) out << " " << format_rational(v);
  out << "\n";
  out << "final";
  for (int b : flags) out << " " << b;
  out << "\n";
  for (std::size_t s = 0; s < m.alphabet.size(); ++s) {
    out << "matrix " << m.alphabet.symbols[s] << "\n";
    for (std::size_t i = 0; i < m.k; ++i) {
      for (std::size_t j = 0; j < m.k; ++j)
        out << (j ? " " : "") << format_rational(m.M[s].at(i, j));
      out << "\n";
    }
  }
}

}  // namespace

Machine parse_automaton(std::istream& in) { return Parser(tokenize(in)).run(); }

Machine parse_automaton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  return parse_automaton(in);
}

std::string serialize(const Pfa& p) {
  std::ostringstream out;
  serialize_common(out, "pfa", p, p.y);
  return out.str();
}

std::string serialize(const Afa& a) {
  std::ostringstream out;
  serialize_common(out, "afa", a, a.f);
  return out.str();
}

std::string serialize(const Machine& m) {
  return std::visit([](const auto& x) { return serialize(x); }, m);
}

}  // namespace affa
