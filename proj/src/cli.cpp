#include "cliffpair/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>
#include <sstream>
#include <utility>

#include "cliffpair/suites.hpp"
#include "cliffpair/triality.hpp"

namespace cliffpair {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Fe parse_element(Field f, const std::string& s) {
  try {
    return f.parse(s);
  } catch (const AlgebraError& e) {
    throw InputError(std::string("bad field element '") + s + "': " + e.what());
  }
}

// Ordered key/value report; text mode pads keys, kv mode writes key=value.
class Report {
 public:
  explicit Report(ReportFormat fmt) : fmt_(fmt) {}
  void add(const std::string& k, const std::string& v) { items_.emplace_back(k, v); }
  void add(const std::string& k, int v) { add(k, std::to_string(v)); }
  void flag(const std::string& k, bool ok) {
    add(k, ok ? "ok" : "FAIL");
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  void write(std::ostream& os) const {
    for (const auto& [k, v] : items_) {
      if (fmt_ == ReportFormat::kv) os << k << "=" << v << "\n";
      else os << k << ": " << v << "\n";
    }
  }

 private:
  ReportFormat fmt_;
  std::vector<std::pair<std::string, std::string>> items_;
  bool ok_ = true;
};

std::string blocks_str(const QForm& q) {
  std::string out;
  for (const auto& [a, b] : q.blocks()) out += (out.empty() ? "" : " + ") + std::string("[") + a.str() + "," + b.str() + "]";
  return out;
}

std::string semitrace_values(const SemiTr& s) {
  std::string out = "[";
  for (int i = 0; i < s.values().size(); ++i) out += (i ? "," : "") + s.values()[i].str();
  return out + "]";
}

struct Common {
  std::string field = "gf2";
  std::optional<std::string> blocks, gram;
  std::string format = "text";
  std::uint64_t seed = 1;
  int samples = 10;
};

void add_form_options(CLI::App* sub, Common& c) {
  sub->add_option("--field", c.field, "field header: gf2, gf4, gf16:g^4+g+1, gf2(t), gf4:g^2+g+1(t)");
  sub->add_option("--blocks", c.blocks, "form as symplectic blocks [[a1,b1],...,[am,bm]]");
  sub->add_option("--gram", c.gram, "form as an upper-triangular Gram matrix [[...],...]");
  sub->add_option("--format", c.format, "text or kv")->check(CLI::IsMember({"text", "kv"}));
}

ReportFormat fmt_of(const Common& c) { return c.format == "kv" ? ReportFormat::kv : ReportFormat::text; }

Field field_of_header(const std::string& h) {
  try {
    return parse_field(h);
  } catch (const AlgebraError& e) {
    throw InputError(std::string("bad field header: ") + e.what());
  }
}

QForm form_of(const Common& c) { return parse_form(field_of_header(c.field), c.blocks, c.gram); }

// ---------------------------------------------------------------- commands

int cmd_arf(const Common& c, std::ostream& out) {
  const QForm q = form_of(c);
  Report r(fmt_of(c));
  r.add("field", q.field().name());
  r.add("dim", q.dim());
  r.add("blocks", blocks_str(q));
  const WpClass a = arf(q);
  r.add("arf_value", a.value.str());
  r.add("arf_class", a.str());
  r.write(out);
  return 0;
}

int cmd_invariants(const Common& c, std::ostream& out) {
  const QForm q = form_of(c);
  Report r(fmt_of(c));
  const FormInvariants inv = invariants(q);
  r.add("field", q.field().name());
  r.add("dim", inv.dim);
  r.add("blocks", blocks_str(q));
  r.add("arf_class", inv.arf.str());
  r.add("witt_index", inv.witt ? std::to_string(*inv.witt) : "unsupported");
  const QPair p = adjoint_pair(q);
  const WpClass d = discriminant(p);
  r.add("disc_adjoint", d.str());
  if (d.decided() && inv.arf.decided()) r.flag("disc_equals_arf", *d.bit == *inv.arf.bit);
  else r.flag("disc_equals_arf", wp_class(d.value + inv.arf.value).bit != std::optional<int>(1));
  p.f.check();
  r.write(out);
  return r.ok() ? 0 : 1;
}

int cmd_clifford(const Common& c, bool full, bool decompose, std::ostream& out) {
  const QForm q = form_of(c);
  Report r(fmt_of(c));
  const Cliff cl(q, full ? Parity::full : Parity::even);
  const Alg& a = *cl.alg();
  r.add("field", q.field().name());
  r.add("algebra", full ? "C(q)" : "C0(q)");
  r.add("blocks", blocks_str(q));
  r.add("dim", cl.dim());
  r.add("involution", cl.involution().type());
  r.add("centre_dim", centre(a).dim());
  if (!full) {
    const Vec xi = cl.xi();
    r.add("arf_value", arf_value(q).str());
    r.flag("xi_squared_is_xi_plus_arf", a.mul(xi, xi) == Vec(xi + arf_value(q) * a.one()));
  }
  if (decompose) {
    if (full) {
      const FullDecomposition d = decompose_full(cl);
      for (int i = 0; i < cl.m(); ++i)
        r.add("Q" + std::to_string(i + 1), "[" + Fe(cl.engine().a(i) * cl.engine().b(i)).str() + "," +
                                                 cl.engine().a(i).str() + ")");
      r.add("model_dim", d.model->dim());
    } else {
      if (cl.m() < 2) throw InputError("--decompose needs dim >= 4");
      const EvenDecomposition d = decompose_even(cl);
      for (std::size_t i = 0; i < d.params.size(); ++i)
        r.add("Q" + std::to_string(i + 1), "[" + d.params[i].first.str() + "," + d.params[i].second.str() + ")");
      bool rel = true;
      const Vec one = a.one();
      for (std::size_t i = 0; i < d.params.size(); ++i) {
        rel = rel && a.mul(d.u[i], Vec(one + d.u[i])) == d.params[i].first * one;
        rel = rel && a.mul(d.v[i], d.v[i]) == d.params[i].second * one;
        rel = rel && a.mul(d.u[i], d.v[i]) == a.mul(d.v[i], Vec(one + d.u[i]));
      }
      r.flag("generator_relations", rel);
    }
  }
  if (!full && cl.m() % 2 == 0 && cl.m() >= 4) {
    const SemiTr s = canonical_semitrace(cl, standard_lambda(cl));
    s.check();
    const Components comp = split_components(cl);
    r.add("components", comp.split ? "split" : comp.report);
    if (comp.split) {
      r.add("C+", pair_invariants(comp.plus).str());
      r.add("C-", pair_invariants(comp.minus).str());
    }
  }
  r.write(out);
  return r.ok() ? 0 : 1;
}

int cmd_semitrace(const Common& c, bool full, std::ostream& out) {
  const QForm q = form_of(c);
  Report r(fmt_of(c));
  Rng rng(c.seed);
  const Field f = q.field();
  const int n = q.dim();
  auto random_pair = [&] {
    for (;;) {
      Vec e(n), w(n);
      for (int i = 0; i < n; ++i) e[i] = rng.element(f), w[i] = rng.element(f);
      const Fe b = q.polar_value(e, w);
      if (!b.is_zero()) return std::pair<Vec, Vec>(e, b.inverse() * w);
    }
  };
  r.add("field", f.name());
  r.add("blocks", blocks_str(q));
  if (full) {
    if (q.half_dim() < 3) throw InputError("the full Clifford semi-trace needs dim >= 6");
    const Cliff cl(q, Parity::full);
    const Mat& s = cl.engine().symplectic_matrix();
    const SemiTr base = full_semitrace(cl, Vec(s.col(0)), Vec(s.col(1)));
    bool same = true;
    for (int k = 0; k < c.samples; ++k) {
      const auto [e, e2] = random_pair();
      same = same && full_semitrace(cl, e, e2) == base;
    }
    r.add("algebra", "C(q)");
    r.add("sym_dim", base.sym().dim());
    r.add("samples", c.samples);
    r.flag("symplectic_pairs_agree", same);
    r.add("values", semitrace_values(base));
  } else {
    if (q.half_dim() < 4 || q.half_dim() % 2) throw InputError("the canonical semi-trace needs dim 8 or 12");
    const Cliff cl(q, Parity::even);
    const SemiTr base = canonical_semitrace(cl, standard_lambda(cl));
    bool lam = true, pairs = true;
    for (int k = 0; k < c.samples; ++k) {
      Mat l(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) l(i, j) = rng.element(f);
      l(0, 0) += l.trace() + f.one();
      lam = lam && canonical_semitrace(cl, l) == base;
      const auto [e, e2] = random_pair();
      pairs = pairs && SemiTr(cl.involution(), cl.product(e, e2)) == base;
    }
    r.add("algebra", "C0(q)");
    r.add("sym_dim", base.sym().dim());
    r.add("samples", c.samples);
    r.flag("lambda_independent", lam);
    r.flag("symplectic_pairs_agree", pairs);
    r.add("values", semitrace_values(base));
  }
  r.write(out);
  return r.ok() ? 0 : 1;
}

int cmd_triality(const Common& c, const std::string& matrix, const std::string& cay, bool use_zorn, std::ostream& out) {
  const Field f = field_of_header(c.field);
  const Oct o = [&] {
    if (use_zorn) return zorn(f);
    const std::vector<std::string> p = split_list("[" + cay + "]");
    if (p.size() != 3) throw InputError("--cayley expects a,b,c");
    try {
      return cayley(parse_element(f, p[0]), parse_element(f, p[1]), parse_element(f, p[2]));
    } catch (const AlgebraError& e) {
      throw InputError(e.what());
    }
  }();
  const Mat t = parse_matrix(f, matrix);
  if (t.rows() != 8) throw InputError("similitude matrix must be 8x8");
  Simil s;
  try {
    s = similitude(o, t);
  } catch (const AlgebraError& e) {
    throw InputError(e.what());
  }
  if (!s.proper) throw InputError("similitude is improper; the triality pair needs a proper similitude");
  Report r(fmt_of(c));
  r.add("octonions", o.model());
  r.add("mu", s.mu.str());
  r.add("proper", "yes");
  r.add("nullity", triality_nullity(o, s));
  const TrialityPair p = triality_pair(o, s);
  r.add("t_plus", matrix_literal(p.plus.t));
  r.add("t_minus", matrix_literal(p.minus.t));
  r.add("mu_plus", p.plus.mu.str());
  r.add("mu_minus", p.minus.mu.str());
  r.add("class_t_plus", matrix_literal(class_rep(p.plus.t)));
  r.add("class_t_minus", matrix_literal(class_rep(p.minus.t)));
  const RelationReport rel = check_relations(o, s, p);
  r.flag("relation_a", rel.a == 0);
  r.flag("relation_b", rel.b == 0);
  r.flag("relation_c", rel.c == 0);
  r.flag("multiplier_identity", rel.multiplier);
  r.write(out);
  return r.ok() ? 0 : 1;
}

int cmd_triple(const Common& c, std::ostream& out) {
  const QForm q = form_of(c);
  if (q.dim() != 8) throw InputError("triples need an 8-dimensional form");
  const WpClass a = arf(q);
  if (!a.decided()) throw InputError("Arf class undecided over " + q.field().name());
  if (*a.bit != 0) throw InputError("nontrivial discriminant: the Clifford centre is a field");
  Report r(fmt_of(c));
  const Triple t = make_triple(adjoint_pair(q));
  r.add("field", q.field().name());
  r.add("blocks", blocks_str(q));
  r.add("A", pair_invariants(t.a).str());
  r.add("B", pair_invariants(t.b).str());
  r.add("C", pair_invariants(t.c).str());
  const TripleReport rep = verify_triple_permutation(t);
  for (std::size_t i = 3; i < rep.lines.size(); ++i) r.add("check" + std::to_string(i - 2), rep.lines[i]);
  r.flag("permutation", rep.ok);
  r.write(out);
  return r.ok() ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------- parsing

std::vector<std::string> split_list(std::string_view raw) {
  const std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw InputError("expected a bracketed list: " + s);
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (depth < 0) throw InputError("unbalanced brackets: " + s);
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw InputError("unbalanced brackets: " + s);
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  for (const auto& item : out)
    if (item.empty()) throw InputError("empty list entry: " + s);
  return out;
}

Mat parse_matrix(Field f, std::string_view raw) {
  const std::string s = trim(raw);
  if (s.rfind("identity", 0) == 0) {
    const int n = s == "identity" ? 8 : std::atoi(s.c_str() + 9);
    if (n <= 0) throw InputError("bad identity size: " + s);
    return Mat(Mat::Identity(n, n) + Mat::Constant(n, n, f.zero()));
  }
  const std::vector<std::string> items = split_list(s);
  const auto n = static_cast<int>(items.size());
  // Rows of n entries each.
  bool rows = n > 0;
  std::vector<std::vector<std::string>> parsed;
  for (const auto& it : items) {
    if (it.front() != '[') {
      rows = false;
      break;
    }
    parsed.push_back(split_list(it));
    if (static_cast<int>(parsed.back().size()) != n) {
      rows = false;
      break;
    }
  }
  Mat m(n, n);
  if (rows) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(i, j) = parse_element(f, parsed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return m;
  }
  const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (k * k != n || n == 0) throw InputError("matrix literal is neither n rows of n entries nor n^2 entries");
  m.resize(k, k);
  for (int i = 0; i < n; ++i) m(i / k, i % k) = parse_element(f, items[static_cast<std::size_t>(i)]);
  return m;
}

QForm parse_form(Field f, std::optional<std::string> blocks, std::optional<std::string> gram) {
  // The "blocks=" / "gram=" record prefixes are optional.
  for (auto* opt : {&blocks, &gram}) {
    if (!*opt) continue;
    const auto eq = (*opt)->find('=');
    if (eq != std::string::npos) {
      const std::string key = trim(std::string_view(**opt).substr(0, eq));
      if (key != (opt == &blocks ? "blocks" : "gram")) throw InputError("unknown key: " + key);
      **opt = (*opt)->substr(eq + 1);
    }
  }
  if (blocks.has_value() == gram.has_value()) throw InputError("give exactly one of --blocks and --gram");
  try {
    if (blocks) {
      std::vector<std::pair<Fe, Fe>> bl;
      for (const auto& item : split_list(*blocks)) {
        const auto ab = split_list(item);
        if (ab.size() != 2) throw InputError("each block is a pair [a,b]: " + item);
        bl.emplace_back(parse_element(f, ab[0]), parse_element(f, ab[1]));
      }
      if (bl.empty()) throw InputError("empty block list");
      return QForm(QForm::from_blocks(bl).gram(), f);
    }
    const Mat g = parse_matrix(f, *gram);
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < i; ++j)
        if (!g(i, j).is_zero()) throw InputError("Gram matrix must be upper triangular");
    return QForm(g, f);
  } catch (const AlgebraError& e) {
    throw InputError(e.what());
  }
}

std::string matrix_literal(const Mat& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    out += i ? ",[" : "[";
    for (int j = 0; j < m.cols(); ++j) out += (j ? "," : "") + m(i, j).str();
    out += "]";
  }
  return out + "]";
}

// ---------------------------------------------------------------- driver

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Clifford algebras, quadratic pairs and triality in characteristic 2", "cliffpair"};
  app.require_subcommand(1);
  Common c;
  bool full = false, decompose = false, use_zorn = false;
  std::string matrix, cay = "0,1,1", suite;

  auto* arf_cmd = app.add_subcommand("arf", "Arf invariant of a form");
  add_form_options(arf_cmd, c);
  auto* inv_cmd = app.add_subcommand("invariants", "dimension, Arf, Witt index and adjoint discriminant");
  add_form_options(inv_cmd, c);
  auto* cl_cmd = app.add_subcommand("clifford", "even (or full) Clifford algebra report");
  add_form_options(cl_cmd, c);
  cl_cmd->add_flag("--full", full, "full Clifford algebra");
  cl_cmd->add_flag("--decompose", decompose, "quaternion tensor decomposition");
  auto* st_cmd = app.add_subcommand("semitrace", "canonical semi-trace checks");
  add_form_options(st_cmd, c);
  st_cmd->add_flag("--full", full, "full Clifford algebra (x -> Trd(e e' x))");
  st_cmd->add_option("--seed", c.seed, "random seed");
  st_cmd->add_option("--samples,-n", c.samples, "random samples")->check(CLI::PositiveNumber);
  auto* tr_cmd = app.add_subcommand("triality", "(t+, t-) for a proper similitude of the octonion norm");
  tr_cmd->add_option("--field", c.field, "field header");
  tr_cmd->add_option("--matrix", matrix, "8x8 matrix, rows or a row-major list; 'identity' allowed")->required();
  tr_cmd->add_option("--cayley", cay, "Cayley-Dickson parameters a,b,c");
  tr_cmd->add_flag("--zorn", use_zorn, "use the Zorn vector-matrix model");
  tr_cmd->add_option("--format", c.format, "text or kv")->check(CLI::IsMember({"text", "kv"}));
  auto* tp_cmd = app.add_subcommand("triple", "trialitarian triple of Ad_q for an 8-dimensional form");
  add_form_options(tp_cmd, c);
  auto* su_cmd = app.add_subcommand("suite", "randomized verification suite");
  su_cmd->add_option("name", suite, "semitrace|clifford|triality|triples|appendix|all")->required();
  su_cmd->add_option("--seed", c.seed, "random seed");
  su_cmd->add_option("--samples,-n", c.samples, "cases per property")->check(CLI::PositiveNumber);
  su_cmd->add_option("--format", c.format, "text or kv")->check(CLI::IsMember({"text", "kv"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*arf_cmd) return cmd_arf(c, out);
    if (*inv_cmd) return cmd_invariants(c, out);
    if (*cl_cmd) return cmd_clifford(c, full, decompose, out);
    if (*st_cmd) return cmd_semitrace(c, full, out);
    if (*tr_cmd) return cmd_triality(c, matrix, cay, use_zorn, out);
    if (*tp_cmd) return cmd_triple(c, out);
    if (*su_cmd) {
      if (!is_suite(suite)) throw InputError("unknown suite: " + suite);
      const SuiteReport rep = run_suite(suite, c.seed, c.samples);
      out << rep.str(fmt_of(c));
      return rep.ok() ? 0 : 1;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // A bug guard or verification inside the library tripped.
    err << "check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cliffpair
