#include "modfun/cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "modfun/errors.hpp"
#include "modfun/modeq/modeq.hpp"
#include "modfun/singular/singular.hpp"

namespace modfun {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("expected an integer for " + what + ", got '" + s + "'");
  }
}

std::vector<long> parse_longs(const std::string& text, std::size_t count, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != count) {
    throw ValidationError(what + " needs " + std::to_string(count) + " comma-separated integers, got '" + text + "'");
  }
  std::vector<long> out;
  for (const auto& p : parts) out.push_back(parse_long(p, what));
  return out;
}

}  // namespace

TripleA parse_triple(const std::string& text, long level) {
  const auto v = parse_longs(text, 3, "triple");
  return TripleA::make(level, v[0], v[1], v[2]);
}

TupleA parse_tuple_spec(const std::string& text, long level) {
  std::vector<TripleA> triples;
  for (const auto& part : split(text, ';')) triples.push_back(parse_triple(part, level));
  return TupleA::make(std::move(triples));
}

IntPoly parse_poly(const std::string& text, int nvars) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ValidationError("empty polynomial");
  std::vector<IntPoly::Term> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw ValidationError("expected '+' or '-' in polynomial at '" + s.substr(i) + "'");
    }
    const std::size_t end = s.find_first_of("+-", i);
    const std::string body = s.substr(i, end == std::string::npos ? std::string::npos : end - i);
    i = end == std::string::npos ? s.size() : end;
    if (body.empty()) throw ValidationError("empty term in polynomial '" + text + "'");
    BigInt coef = sign;
    IntPoly::Exponents exps(static_cast<std::size_t>(nvars), 0);
    for (const auto& factor : split(body, '*')) {
      if (factor.empty()) throw ValidationError("empty factor in polynomial '" + text + "'");
      if (factor[0] == 'X' || factor[0] == 'x') {
        const auto caret = factor.find('^');
        const long idx = parse_long(factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1),
                                    "variable index");
        const long e = caret == std::string::npos ? 1 : parse_long(factor.substr(caret + 1), "exponent");
        if (idx < 1 || idx > nvars) {
          throw ValidationError("variable X" + std::to_string(idx) + " outside X1..X" + std::to_string(nvars));
        }
        if (e < 0) throw ValidationError("negative exponent in polynomial");
        exps[static_cast<std::size_t>(idx - 1)] += static_cast<int>(e);
      } else {
        if (!std::all_of(factor.begin(), factor.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          throw ValidationError("coefficient '" + factor + "' is not a non-negative integer");
        }
        coef *= BigInt(factor);
      }
    }
    terms.emplace_back(std::move(exps), coef);
  }
  return IntPoly(nvars, std::move(terms));
}

namespace {

enum class Format { Json, Text };

struct Request {
  long level = 0;
  std::string triple, tuple, poly = "X1", row = "0,1", form, tau;
  std::optional<long> disc, b0, phi;
  long terms = 20;
  long digits = 50;
  long guard = 16;
  std::string format = "json";
  std::string out_path;
};

std::string complex_text(const BigComplex& z, long digits) { return z.to_string(static_cast<int>(digits)); }

nlohmann::json complex_json(const BigComplex& z, long digits) {
  return {{"re", z.re().to_string(static_cast<int>(digits))}, {"im", z.im().to_string(static_cast<int>(digits))}};
}

BigComplex parse_point(const Request& r, mpfr_prec_t bits) {
  if (!r.form.empty() && !r.tau.empty()) throw ValidationError("give either --form or --tau, not both");
  if (!r.form.empty()) {
    const auto v = parse_longs(r.form, 3, "--form");
    return QuadraticForm::make(v[0], v[1], v[2]).root(bits);
  }
  if (!r.tau.empty()) {
    const auto parts = split(r.tau, ',');
    if (parts.size() != 2) throw ValidationError("--tau needs RE,IM");
    try {
      BigComplex z(BigFloat(trim(parts[0]), bits), BigFloat(trim(parts[1]), bits));
      if (z.im().sign() <= 0) throw ValidationError("--tau must have positive imaginary part");
      return z;
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw ValidationError("cannot parse --tau '" + r.tau + "'");
    }
  }
  throw ValidationError("a point is required: --form A,B,C or --tau RE,IM");
}

void need_level(const Request& r) {
  if (r.level < 3) throw ValidationError("--level N with N >= 3 is required");
}

struct Document {
  nlohmann::json json;
  std::string text;
};

Document cmd_transversal(const Request& r) {
  need_level(r);
  const auto reps = coset_transversal(r.level);
  Document d;
  nlohmann::json ms = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& b : reps) {
    const auto& m = b.matrix;
    ms.push_back({{"t", b.t}, {"u", b.u}, {"v", b.v}, {"k", b.k}, {"matrix", {{m.a, m.b}, {m.c, m.d}}}});
    text << "B(" << b.t << "," << b.u << "," << b.v << "," << b.k << ") = " << m.to_string() << "\n";
  }
  d.json = {{"N", r.level}, {"count", reps.size()}, {"psi0", psi0(r.level)}, {"matrices", ms}};
  d.text = text.str();
  return d;
}

Document cmd_qexp(const Request& r) {
  need_level(r);
  const auto row = parse_longs(r.row, 2, "--row");
  QSeries f = QSeries::zero(r.level, 0);
  std::string what;
  const int chosen = (r.phi ? 1 : 0) + (!r.triple.empty() ? 1 : 0) + (!r.tuple.empty() ? 1 : 0);
  if (chosen != 1) throw ValidationError("qexp needs exactly one of --phi, --triple, --tuple");
  if (r.phi) {
    f = phi_series(r.level, *r.phi, row[0], row[1], r.terms);
    what = "phi_" + std::to_string(*r.phi);
  } else if (!r.triple.empty()) {
    const TripleA a = parse_triple(r.triple, r.level);
    f = w_series(a, row[0], row[1], r.terms);
    what = "W" + a.to_string();
  } else {
    const TupleA t = parse_tuple_spec(r.tuple, r.level);
    const IntPoly p = parse_poly(r.poly, static_cast<int>(t.size()));
    f = t_series(t, p, row[0], row[1], r.terms);
    what = "T" + t.to_string() + " F=" + p.to_string();
  }
  nlohmann::json cs = nlohmann::json::array();
  for (std::size_t i = 0; i < f.coefficients().size(); ++i) {
    const auto& c = f.coefficients()[i];
    if (c.is_zero()) continue;
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& x : c.coeffs()) basis.push_back(to_string(x));
    cs.push_back({{"e", f.first_exponent() + static_cast<QSeries::Exponent>(i)}, {"c", basis}});
  }
  Document d;
  d.json = {{"N", r.level}, {"function", what}, {"row", row}, {"trunc", f.trunc() ? nlohmann::json(*f.trunc()) : nullptr},
            {"basis", "coefficients of zeta^0..zeta^(phi(N)-1), zeta = exp(2 pi i/N), q = exp(2 pi i tau/N)"},
            {"coeffs", cs}};
  d.text = what + " = " + f.to_string(static_cast<int>(f.coefficients().size())) + "\n";
  return d;
}

Document poly_document(const BivarPoly& phi, nlohmann::json head) {
  Document d;
  head["phi"] = phi.to_json();
  head["is_integral"] = phi.is_integral();
  d.json = std::move(head);
  d.text = phi.to_string() + "\n";
  return d;
}

Document cmd_modeq_w(const Request& r, std::ostream& err) {
  need_level(r);
  const TripleA a = parse_triple(r.triple, r.level);
  const BivarPoly phi = modular_equation_W(a, ModeqOptions{r.guard, &err});
  return poly_document(phi, {{"N", r.level}, {"triple", a.to_string()}, {"class", to_string(membership(a))}});
}

Document cmd_modeq_t(const Request& r, std::ostream& err) {
  need_level(r);
  const TupleA t = parse_tuple_spec(r.tuple, r.level);
  const IntPoly p = parse_poly(r.poly, static_cast<int>(t.size()));
  const BivarPoly phi = modular_equation_T(t, p, ModeqOptions{r.guard, &err});
  return poly_document(phi, {{"N", r.level}, {"tuple", t.to_string()}, {"F", p.to_string()}});
}

Document cmd_nsystem(const Request& r) {
  need_level(r);
  if (!r.disc) throw ValidationError("--disc D is required");
  const NSystem sys = build_nsystem(*r.disc, r.level, r.b0);
  Document d;
  d.json = sys.to_json();
  d.json["h"] = sys.forms.size();
  std::ostringstream text;
  for (const auto& f : sys.forms) {
    text << f.to_string() << "  alpha = (" << -f.B << "+sqrt(" << sys.D << "))/" << 2 * f.A << "\n";
  }
  d.text = text.str();
  return d;
}

Document cmd_classpoly(const Request& r, std::ostream& err, bool digits_given) {
  need_level(r);
  if (!r.disc) throw ValidationError("--disc D is required");
  const TupleA t = parse_tuple_spec(r.tuple, r.level);
  const IntPoly p = parse_poly(r.poly, static_cast<int>(t.size()));
  ClassPolyOptions opts;
  opts.digits = digits_given ? r.digits : 0;
  opts.log = &err;
  const ClassPolynomial h = class_polynomial(t, p, *r.disc, r.b0, opts);
  Document d;
  d.json = h.to_json();
  d.json["tuple"] = t.to_string();
  d.json["F"] = p.to_string();
  d.text = h.to_string() + "\n";
  return d;
}

Document cmd_eval(const Request& r, const std::string& which) {
  if (r.digits < 5) throw ValidationError("--digits must be at least 5");
  const mpfr_prec_t bits = bits_for_digits(r.digits + kGuardDigits);
  const BigComplex alpha = parse_point(r, bits);
  BigComplex value(bits);
  nlohmann::json head;
  if (which == "t") {
    need_level(r);
    const TupleA t = parse_tuple_spec(r.tuple, r.level);
    const IntPoly p = parse_poly(r.poly, static_cast<int>(t.size()));
    value = eval_T_at_minus_recip(t, p, alpha, r.digits);
    head = {{"N", r.level}, {"tuple", t.to_string()}, {"F", p.to_string()}, {"function", "T(-1/alpha)"}};
  } else if (which == "w") {
    need_level(r);
    const TripleA a = parse_triple(r.triple, r.level);
    value = eval_W(a, alpha, r.digits);
    head = {{"N", r.level}, {"triple", a.to_string()}, {"function", "W(alpha)"}};
  } else {
    value = eval_j(alpha, r.digits);
    head = {{"function", "j(alpha)"}};
  }
  Document d;
  head["alpha"] = complex_json(alpha, r.digits);
  head["value"] = complex_json(value, r.digits);
  head["digits"] = r.digits;
  d.json = std::move(head);
  d.text = complex_text(value, r.digits) + "\n";
  return d;
}

void add_common(CLI::App* sub, Request& r) {
  sub->add_option("--format", r.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--out", r.out_path, "Write the document to PATH instead of standard output");
}

void add_digits(CLI::App* sub, Request& r) {
  sub->add_option("--digits", r.digits, "Decimal digits")->envname("MODFUN_DIGITS");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Modular equations and singular values of Weierstrass p-quotients", "modfun");
  app.require_subcommand(1);
  Request r;

  auto* transversal = app.add_subcommand("transversal", "Coset representatives of Gamma0(N) in SL2(Z)");
  transversal->add_option("--level", r.level, "Level N")->required();
  add_common(transversal, r);

  auto* qexp = app.add_subcommand("qexp", "q-expansion of phi_s, W_a or T_{A,F} composed with a matrix");
  qexp->add_option("--level", r.level, "Level N")->required();
  qexp->add_option("--phi", r.phi, "Index s of phi_s");
  qexp->add_option("--triple", r.triple, "Triple a1,a2,a3 for W");
  qexp->add_option("--tuple", r.tuple, "Triples a1,a2,a3;b1,b2,b3;... for T");
  qexp->add_option("--poly", r.poly, "Polynomial F in X1..Xn (default X1)");
  qexp->add_option("--row", r.row, "Bottom row c,d of the matrix (default 0,1)");
  qexp->add_option("--terms", r.terms, "Exact below q^terms")->envname("MODFUN_TERMS");
  add_common(qexp, r);

  auto* modeq_w = app.add_subcommand("modeq-w", "Modular equation of W_a over j");
  modeq_w->add_option("--level", r.level, "Level N")->required();
  modeq_w->add_option("--triple", r.triple, "Triple a1,a2,a3")->required();
  modeq_w->add_option("--guard", r.guard, "Exponents checked after reduction")->check(CLI::PositiveNumber);
  add_common(modeq_w, r);

  auto* modeq_t = app.add_subcommand("modeq-t", "Modular equation of T_{A,F} over j");
  modeq_t->add_option("--level", r.level, "Level N")->required();
  modeq_t->add_option("--tuple", r.tuple, "Triples a1,a2,a3;b1,b2,b3;...")->required();
  modeq_t->add_option("--poly", r.poly, "Polynomial F in X1..Xn (default X1)");
  modeq_t->add_option("--guard", r.guard, "Exponents checked after reduction")->check(CLI::PositiveNumber);
  add_common(modeq_t, r);

  auto* nsystem = app.add_subcommand("nsystem", "N-system for a discriminant");
  nsystem->add_option("--level", r.level, "Level N")->required();
  nsystem->add_option("--disc", r.disc, "Discriminant D < 0")->required();
  nsystem->add_option("--b0", r.b0, "Anchor B0 with B0^2 = D mod 4N");
  add_common(nsystem, r);

  auto* classpoly = app.add_subcommand("classpoly", "Class polynomial of T_{A,F} over an N-system");
  classpoly->add_option("--level", r.level, "Level N")->required();
  classpoly->add_option("--tuple", r.tuple, "Triples a1,a2,a3;...")->required();
  classpoly->add_option("--poly", r.poly, "Polynomial F in X1..Xn (default X1)");
  classpoly->add_option("--disc", r.disc, "Discriminant D < 0")->required();
  classpoly->add_option("--b0", r.b0, "Anchor B0");
  auto* cp_digits = classpoly->add_option("--digits", r.digits, "Starting precision (default max(100, 20 h))");
  add_common(classpoly, r);

  auto* eval_t = app.add_subcommand("eval-t", "T_{A,F}(-1/alpha)");
  eval_t->add_option("--level", r.level, "Level N")->required();
  eval_t->add_option("--tuple", r.tuple, "Triples a1,a2,a3;...")->required();
  eval_t->add_option("--poly", r.poly, "Polynomial F in X1..Xn (default X1)");
  eval_t->add_option("--form", r.form, "alpha as the root of the form A,B,C");
  eval_t->add_option("--tau", r.tau, "alpha as RE,IM");
  add_digits(eval_t, r);
  add_common(eval_t, r);

  auto* eval_w = app.add_subcommand("eval-w", "W_a(alpha)");
  eval_w->add_option("--level", r.level, "Level N")->required();
  eval_w->add_option("--triple", r.triple, "Triple a1,a2,a3")->required();
  eval_w->add_option("--form", r.form, "alpha as the root of the form A,B,C");
  eval_w->add_option("--tau", r.tau, "alpha as RE,IM");
  add_digits(eval_w, r);
  add_common(eval_w, r);

  auto* eval_jc = app.add_subcommand("eval-j", "j(alpha)");
  eval_jc->add_option("--form", r.form, "alpha as the root of the form A,B,C");
  eval_jc->add_option("--tau", r.tau, "alpha as RE,IM");
  add_digits(eval_jc, r);
  add_common(eval_jc, r);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    Document doc;
    if (transversal->parsed()) {
      doc = cmd_transversal(r);
    } else if (qexp->parsed()) {
      doc = cmd_qexp(r);
    } else if (modeq_w->parsed()) {
      doc = cmd_modeq_w(r, err);
    } else if (modeq_t->parsed()) {
      doc = cmd_modeq_t(r, err);
    } else if (nsystem->parsed()) {
      doc = cmd_nsystem(r);
    } else if (classpoly->parsed()) {
      doc = cmd_classpoly(r, err, cp_digits->count() > 0);
    } else if (eval_t->parsed()) {
      doc = cmd_eval(r, "t");
    } else if (eval_w->parsed()) {
      doc = cmd_eval(r, "w");
    } else {
      doc = cmd_eval(r, "j");
    }
    const std::string body = r.format == "json" ? doc.json.dump(2) + "\n" : doc.text;
    if (r.out_path.empty()) {
      out << body;
    } else {
      std::ofstream file(r.out_path, std::ios::binary);
      if (!file) throw ValidationError("cannot open " + r.out_path + " for writing");
      file << body;
      err << "wrote " << r.out_path << "\n";
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const ConsistencyError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace modfun
