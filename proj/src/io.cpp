#include "longres/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace longres {

namespace {

class FormLexer {
 public:
  explicit FormLexer(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }
  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char get() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    ++col_;
    return text_[pos_++];
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

  // Unsigned integer literal.
  mpz_class integer() {
    skip_ws();
    if (pos_ >= text_.size() || !isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected an integer");
    std::string digits;
    while (pos_ < text_.size() &&
           isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_++];
      ++col_;
    }
    return mpz_class(digits);
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct FormParser {
  FormLexer lex;
  int vars;

  explicit FormParser(const std::string& text, int d) : lex(text), vars(d) {}

  // var = 'z' index ['^' positive-integer]
  void parse_var(Monomial& mono) {
    char c = lex.get();
    if (c != 'z') lex.fail("expected a variable 'z<k>'");
    mpz_class idx = lex.integer();
    if (idx < 1 || idx > vars)
      lex.fail("variable index out of range 1.." + std::to_string(vars));
    int k = static_cast<int>(idx.get_si()) - 1;
    int e = 1;
    if (lex.peek() == '^') {
      lex.get();
      mpz_class ev = lex.integer();
      if (ev < 1) lex.fail("exponent must be positive");
      e = static_cast<int>(ev.get_si());
    }
    mono = mono.times_var(k, e);
  }

  // term = [rational '*'] monomial | rational
  void parse_term(std::map<Monomial, Rational>& terms, bool negate) {
    Rational coeff(1);
    bool have_coeff = false;
    char c = lex.peek();
    if (isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = lex.integer();
      mpz_class den = 1;
      if (lex.peek() == '/') {
        lex.get();
        den = lex.integer();
        if (den == 0) lex.fail("zero denominator");
      }
      coeff = Rational(mpq_class(num, den));
      have_coeff = true;
    }
    Monomial mono(vars);
    if (have_coeff) {
      if (lex.peek() == '*') {
        lex.get();
        if (lex.peek() != 'z') lex.fail("expected a variable after '*'");
        parse_var(mono);
        while (lex.peek() == '*') {
          lex.get();
          parse_var(mono);
        }
      }
    } else if (c == 'z') {
      parse_var(mono);
      while (lex.peek() == '*') {
        lex.get();
        parse_var(mono);
      }
    } else {
      lex.fail("expected a term");
    }
    if (negate) coeff = -coeff;
    auto it = terms.find(mono);
    if (it == terms.end())
      terms.emplace(mono, coeff);
    else
      it->second += coeff;
  }

  Form parse() {
    std::map<Monomial, Rational> terms;
    bool negate = false;
    if (lex.peek() == '-') {
      lex.get();
      negate = true;
    } else if (lex.peek() == '+') {
      lex.get();
    }
    parse_term(terms, negate);
    while (!lex.eof()) {
      char c = lex.get();
      if (c == '+')
        parse_term(terms, false);
      else if (c == '-')
        parse_term(terms, true);
      else
        lex.fail(std::string("unexpected character '") + c + "'");
    }
    // Drop cancelled terms, then enforce homogeneity.
    int degree = -1;
    for (auto it = terms.begin(); it != terms.end();) {
      if (it->second.is_zero()) {
        it = terms.erase(it);
        continue;
      }
      if (degree < 0) degree = it->first.degree();
      if (it->first.degree() != degree)
        throw InvariantError("polynomial is not homogeneous: degrees " +
                             std::to_string(degree) + " and " +
                             std::to_string(it->first.degree()) + " mix");
      ++it;
    }
    Form out(vars, degree < 0 ? 0 : degree);
    for (const auto& [m, c] : terms) out.set_coefficient(m, c);
    return out;
  }
};

}  // namespace

Form parse_form(const std::string& text, int vars) {
  if (vars < 0) throw BadInput("negative variable count");
  FormParser parser(text, vars);
  return parser.parse();
}

std::string form_to_string(const Form& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    Rational a = abs(c);
    if (first) {
      if (c.sign() < 0) out += "-";
      first = false;
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    if (m.is_constant()) {
      out += a.str();
    } else if (a == Rational(1)) {
      out += m.str();
    } else {
      out += a.str() + "*" + m.str();
    }
  }
  return out;
}

namespace {

using nlohmann::json;

MatrixForm matrix_from_strings(const json& rows, int d, int m,
                               const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != m)
    throw InvariantError(std::string(what) + " must be an m x m string matrix");
  std::vector<std::vector<Form>> entries;
  int degree = -1;
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw InvariantError(std::string(what) + " must be an m x m string matrix");
    entries.emplace_back();
    for (const auto& cell : row) {
      Form f = parse_form(cell.get<std::string>(), d);
      if (!f.is_zero()) {
        if (degree < 0) degree = f.degree();
        if (f.degree() != degree)
          throw InvariantError(std::string(what) +
                               " entries have mixed degrees");
      }
      entries.back().push_back(std::move(f));
    }
  }
  if (degree < 0) degree = 0;
  FormMatrix mat(m, m, d, degree);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      mat.set(i, j, entries[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return MatrixForm::from_matrix(mat);
}

}  // namespace

ParsedInput parse_input_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1, 1);
  }
  if (!j.is_object()) throw InvariantError("input must be a JSON object");
  if (!j.contains("d") || !j["d"].is_number_integer())
    throw InvariantError("input needs an integer field 'd'");
  int d = j["d"].get<int>();
  if (d < 0) throw InvariantError("'d' must be nonnegative");
  int m = j.value("m", 1);
  if (m < 1) throw InvariantError("'m' must be positive");

  if (j.contains("F")) return matrix_from_strings(j["F"], d, m, "F");

  if (!j.contains("num") || !j.contains("den"))
    throw InvariantError("input needs either 'F' or 'num'+'den'");
  MatrixForm P = matrix_from_strings(j["num"], d, m, "num");
  Form q = parse_form(j["den"].get<std::string>(), d);
  return RatFn(std::move(P), std::move(q));
}

ParsedInput parse_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open input file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_input_text(buf.str());
}

namespace {

json matrix_to_json(const MatrixForm& F) {
  json rows = json::array();
  for (int i = 0; i < F.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < F.size(); ++j) row.push_back(form_to_string(F.entry(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string serialize(const RatFn& f) {
  json j;
  j["d"] = f.vars();
  j["m"] = f.size();
  j["num"] = matrix_to_json(f.num());
  j["den"] = form_to_string(f.den());
  return j.dump(2);
}

std::string serialize(const MatrixForm& F) {
  json j;
  j["d"] = F.vars();
  j["m"] = F.size();
  j["F"] = matrix_to_json(F);
  return j.dump(2);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace longres
