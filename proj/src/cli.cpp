#include "hypergm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "hypergm/errors.hpp"
#include "hypergm/fixtures.hpp"
#include "hypergm/json_io.hpp"

namespace hypergm {

namespace {

std::string set_str(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "}";
}

std::string sets_str(const std::vector<IndexSet>& sets) {
  std::string out;
  for (const IndexSet& s : sets) out += (out.empty() ? "" : " ") + set_str(s);
  return out;
}

std::string matrix_str(const Matrix<WeightExpr>& m, const std::string& indent) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << indent << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).to_string();
    os << "]\n";
  }
  return os.str();
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Arrangement load_arrangement(const std::string& path) {
  if (path.empty()) throw ValidationError("--arrangement is required for this command");
  if (!std::filesystem::exists(path)) {
    if (path == "example1") return fixtures().example1.arrangement;
    if (path == "ceva") return fixtures().ceva.arrangement;
  }
  return arrangement_from_json(parse_json(read_file(path), path));
}

std::optional<Weights> load_weights(const std::string& spec) {
  if (spec.empty() || spec == "symbolic") return std::nullopt;
  return weights_from_json(parse_json(read_file(spec), spec));
}

Weights require_weights(const JobSpec& job) {
  auto w = load_weights(job.weights);
  if (!w) throw ValidationError("command '" + job.command + "' needs numeric weights (--weights <file>)");
  return *w;
}

std::string connection_text(const GMConnection& g) {
  std::ostringstream os;
  os << "basis: " << sets_str(g.basis) << "\n";
  for (std::size_t j = 0; j < g.basis.size(); ++j) {
    os << "column " << j + 1 << " (e" << set_str(g.basis[j]) << "):\n";
    for (std::size_t i = 0; i < g.basis.size(); ++i) os << "  " << bracket_entry(g, i, j) << "\n";
  }
  for (const GMComponent& c : g.components) os << "residue along " << c.form.to_string('h') << ":\n" << matrix_str(c.residue, "  ");
  return os.str();
}

std::string monodromy_text(const MonodromyResult& r) {
  std::ostringstream os;
  os << "method: " << r.method << "\n";
  if (r.trace) os << "trace: " << r.trace->to_string() << "\n";
  for (Eigen::Index i = 0; i < r.matrix.rows(); ++i) {
    os << "  [";
    for (Eigen::Index j = 0; j < r.matrix.cols(); ++j) {
      const cplx z = r.matrix(i, j);
      os << (j ? ", " : "") << fmt_double(z.real()) << (z.imag() < 0 ? " - " : " + ") << fmt_double(std::abs(z.imag()))
         << "i";
    }
    os << "]\n";
  }
  double worst = std::numeric_limits<double>::infinity();
  for (const EigenGap& g : r.conditions) worst = std::min(worst, g.margin);
  if (!r.conditions.empty()) os << "smallest eigenvalue-gap margin: " << fmt_double(worst) << "\n";
  return os.str();
}

struct Output {
  json data;
  std::string text;
};

Output cmd_lattice(const JobSpec& job) {
  const Lattice l = lattice(load_arrangement(job.arrangement));
  std::ostringstream os;
  for (std::size_t r = 0; r < l.levels.size(); ++r) {
    os << "rank " << r << ":";
    for (const Flat& f : l.levels[r]) os << " " << set_str(f.support);
    os << "\n";
  }
  return {to_json(l), os.str()};
}

Output cmd_bad_loci(const JobSpec& job) {
  const std::vector<Flat> flats = bad_loci(load_arrangement(job.arrangement));
  std::ostringstream os;
  for (const Flat& f : flats) os << set_str(f.support) << " rank " << f.rank << "\n";
  return {{{"bad_loci", flats_to_json(flats)}}, os.str()};
}

Output cmd_circuits(const JobSpec& job) {
  const Matroid m(load_arrangement(job.arrangement));
  std::ostringstream os;
  for (const Circuit& c : m.circuits()) {
    os << "circuit " << set_str(c.support) << " dependency";
    for (const Rat& r : c.dependency) os << " " << r;
    os << "\n";
  }
  os << "affine circuits: " << sets_str(m.affine_circuits()) << "\n";
  os << "broken circuits:";
  for (const BrokenCircuit& b : m.broken_circuits()) os << " " << set_str(b.support) << " (princ " << b.princ << ")";
  os << "\naffine broken circuits:";
  for (const BrokenCircuit& b : m.affine_broken_circuits()) os << " " << set_str(b.support) << " (princ " << b.princ << ")";
  os << "\n";
  json data = {{"circuits", circuits_to_json(m.circuits())},
               {"affine_circuits", index_sets_to_json(m.affine_circuits())},
               {"broken_circuits", broken_circuits_to_json(m.broken_circuits())},
               {"affine_broken_circuits", broken_circuits_to_json(m.affine_broken_circuits())}};
  if (!m.warnings().empty()) data["warnings"] = m.warnings();
  return {data, os.str()};
}

Output cmd_nbc(const JobSpec& job) {
  const Matroid m(load_arrangement(job.arrangement));
  const std::size_t p = job.degree ? job.degree : m.n();
  if (p > m.n()) throw ValidationError("degree exceeds the dimension");
  const std::vector<IndexSet> sets = m.nbc_sets(p);
  return {{{"degree", p}, {"nbc", index_sets_to_json(sets)}}, sets_str(sets) + "\n"};
}

Output cmd_os_relations(const JobSpec& job) {
  const Matroid m(load_arrangement(job.arrangement));
  const OSAlgebra os(m);
  const std::size_t p = job.degree ? job.degree : m.n();
  if (p > m.n()) throw ValidationError("degree exceeds the dimension");
  const std::vector<Relation> rels = os.relation_basis(p);
  std::ostringstream txt;
  for (const Relation& r : rels) {
    if (r.kind == Relation::Kind::dependent)
      txt << "e" << set_str(r.source) << " = 0\n";
    else
      txt << "d e" << set_str(r.source) << " = " << r.element.to_string() << "\n";
  }
  return {{{"degree", p}, {"relations", relations_to_json(rels)}}, txt.str()};
}

Output cmd_aomoto_dims(const JobSpec& job) {
  const AomotoComplex cx(load_arrangement(job.arrangement), false);
  const std::vector<std::size_t> dims = cx.cohomology_dims(require_weights(job).assignment());
  std::ostringstream os;
  for (std::size_t p = 0; p < dims.size(); ++p) os << "H^" << p << " = " << dims[p] << "\n";
  return {{{"dims", dims}}, os.str()};
}

Output cmd_discriminant(const JobSpec& job) {
  const std::vector<ProjForm> d = discriminant(load_arrangement(job.arrangement));
  json arr = json::array();
  std::ostringstream os;
  for (const ProjForm& f : d) {
    json row = json::array();
    for (const Rat& c : f.coeffs()) row.push_back(to_json(c));
    arr.push_back(row);
    os << f.to_string('h') << "\n";
  }
  return {{{"discriminant", arr}}, os.str()};
}

Output cmd_gauss_manin(const JobSpec& job) {
  const MovingFamily fam(load_arrangement(job.arrangement), load_weights(job.weights));
  GmOptions opts;
  opts.seed = job.seed;
  const GMConnection g = gm_matrix(fam, opts);
  return {to_json(g), connection_text(g)};
}

MonodromyMode parse_mode(const std::string& s) {
  if (s == "closed_form") return MonodromyMode::closed_form;
  if (s == "numeric") return MonodromyMode::numeric;
  if (s == "both") return MonodromyMode::both;
  throw ValidationError("unknown monodromy mode '" + s + "'");
}

Output cmd_monodromy(const JobSpec& job) {
  const Arrangement a = load_arrangement(job.arrangement);
  const Weights w = require_weights(job);
  if (job.component.empty()) throw ValidationError("--component is required");
  const MovingFamily fam(a, std::nullopt);
  GmOptions opts;
  opts.seed = job.seed;
  const GMConnection g = gm_matrix(fam, opts);
  const ProjForm comp = ProjForm::parse(job.component, a.n());
  const MonodromyResult r = monodromy(residue_of(g, comp), w.assignment(), parse_mode(job.mode));
  json data = to_json(r);
  data["component"] = comp.to_string('h');
  return {data, "component: " + comp.to_string('h') + "\n" + monodromy_text(r)};
}

Output cmd_verify(const JobSpec& job) {
  const VerifyReport rep = verify_example(job.fixture, job.seed);
  std::string text = rep.summary + "\n";
  for (const std::string& f : rep.failures) text += "  " + f + "\n";
  if (!rep.pass) throw ConsistencyError(text);
  return {{{"fixture", job.fixture}, {"pass", true}, {"summary", rep.summary}}, text};
}

}  // namespace

// ---------------------------------------------------------------- verify-paper

namespace {

void expect(VerifyReport& rep, bool ok, const std::string& what) {
  if (!ok) {
    rep.pass = false;
    rep.failures.push_back(what);
  }
}

bool same_forms(std::vector<ProjForm> a, std::vector<ProjForm> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Every nonzero residue in `want` matches `got`, and `got` has no extra ones.
void compare_connections(VerifyReport& rep, const GMConnection& got, const GMConnection& want, bool by_column) {
  const std::size_t nb = want.basis.size();
  std::set<ProjForm> forms;
  for (const GMComponent& c : got.components) forms.insert(c.form);
  for (const GMComponent& c : want.components) forms.insert(c.form);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (const ProjForm& f : forms) {
        const GMComponent* g = got.find(f);
        const GMComponent* w = want.find(f);
        const WeightExpr gv = g ? g->residue(i, j) : WeightExpr();
        const WeightExpr wv = w ? w->residue(i, j) : WeightExpr();
        if (gv == wv) continue;
        std::ostringstream os;
        if (by_column)
          os << "column " << j + 1 << " entry " << i + 1;
        else
          os << "entry (" << i + 1 << "," << j + 1 << ")";
        os << " along " << f.to_string('h') << ": computed " << gv.to_string() << ", expected " << wv.to_string();
        expect(rep, false, os.str());
      }
}

}  // namespace

VerifyReport verify_example(const std::string& which, std::uint64_t seed) {
  const Fixtures& fx = fixtures();
  VerifyReport rep;
  if (which != "example1" && which != "ceva") throw ValidationError("unknown fixture '" + which + "' (example1 | ceva)");
  const WorkedExample& f = which == "example1" ? fx.example1 : fx.ceva;

  const Matroid m(f.arrangement);
  expect(rep, m.nbc_bases() == f.basis, "nbc basis differs: " + sets_str(m.nbc_bases()));
  expect(rep, same_forms(discriminant(f.arrangement), f.discriminant), "discriminant differs");

  GmOptions opts;
  opts.seed = seed;
  const GMConnection g = gm_matrix(MovingFamily(f.arrangement), opts);
  compare_connections(rep, g, f.connection, which == "ceva");

  if (which == "example1") {
    for (std::size_t k = 0; k < f.stated_residues.size(); ++k) {
      const GMComponent& s = f.stated_residues[k];
      const GMComponent* c = g.find(s.form);
      expect(rep, c && c->residue == s.residue, "residue along " + s.form.to_string('h') + " differs");
      const auto t = projector_structure(s.residue);
      expect(rep, t && *t == f.stated_traces[k], "projector structure fails along " + s.form.to_string('h'));
    }
    const FlatnessReport fl = flatness_check(g, 5, seed, true);
    expect(rep, fl.flat && fl.symbolic_checked, "curvature nonzero: " + fl.witness);
    Assignment w = {{1, Rat(1, 3)}, {2, Rat(1, 7)}, {3, Rat(1, 5)}, {kMovingSymbol, Rat(-1, 2)}};
    for (const GMComponent& c : g.components) {
      try {
        const MonodromyResult r = monodromy(c.residue, w, MonodromyMode::both);
        expect(rep, r.method == "both", "no closed form along " + c.form.to_string('h'));
      } catch (const Error& e) {
        expect(rep, false, "monodromy along " + c.form.to_string('h') + ": " + e.what());
      }
    }
    rep.summary = rep.pass ? "PASS: 6 residue matrices, flatness, monodromy closed forms"
                           : "FAIL: example1 (" + std::to_string(rep.failures.size()) + " mismatches)";
  } else {
    std::vector<IndexSet> bc;
    for (const BrokenCircuit& b : m.affine_broken_circuits()) bc.push_back(b.support);
    expect(rep, m.affine_circuits() == fx.ceva_affine_circuits, "affine circuits differ");
    expect(rep, bc == fx.ceva_broken_circuits, "broken circuits differ");
    const FlatnessReport fl = flatness_check(g, 5, seed, false);
    expect(rep, fl.flat, "curvature nonzero: " + fl.witness);
    rep.summary = rep.pass ? "PASS: 6 columns, circuits, flatness"
                           : "FAIL: ceva (" + std::to_string(rep.failures.size()) + " mismatches)";
  }
  return rep;
}

// ---------------------------------------------------------------- run

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobSpec job;
  CLI::App app{"Gauss-Manin connections of hyperplane arrangement families"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool needs_arrangement) {
    if (needs_arrangement)
      sub->add_option("--arrangement", job.arrangement, "arrangement JSON file (or example1 / ceva)")->required();
    sub->add_option("--weights", job.weights, "weights JSON file or 'symbolic'");
    sub->add_option("--seed", job.seed, "seed for all sample sequences");
    sub->add_option("--format", job.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", job.output, "write the result to this file");
  };

  using Handler = Output (*)(const JobSpec&);
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  auto add = [&](const char* name, const char* help, Handler h, bool needs_arrangement = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub, needs_arrangement);
    handlers.emplace_back(sub, h);
    return sub;
  };
  add("lattice", "intersection lattice", cmd_lattice);
  add("bad-loci", "flats in more hyperplanes than their codimension", cmd_bad_loci);
  add("circuits", "circuits and broken circuits", cmd_circuits);
  add("nbc", "nbc sets", cmd_nbc)->add_option("--degree", job.degree, "degree p (default n)");
  add("os-relations", "Orlik-Solomon relation basis", cmd_os_relations)
      ->add_option("--degree", job.degree, "degree p (default n)");
  add("aomoto-dims", "twisted cohomology dimensions", cmd_aomoto_dims);
  add("discriminant", "discriminant components", cmd_discriminant);
  add("gauss-manin", "Gauss-Manin connection of the moving-hyperplane family", cmd_gauss_manin);
  CLI::App* mono = add("monodromy", "local monodromy around a discriminant component", cmd_monodromy);
  mono->add_option("--component", job.component, "component, e.g. 'h0 - h1'")->required();
  mono->add_option("--mode", job.mode, "closed_form, numeric or both")
      ->check(CLI::IsMember({"closed_form", "numeric", "both"}));
  CLI::App* verify = add("verify-paper", "replay an embedded worked example", cmd_verify, false);
  verify->add_option("fixture", job.fixture, "example1 or ceva")->required()->check(CLI::IsMember({"example1", "ceva"}));

  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    err << json{{"error", kind}, {"message", msg}, {"exit_code", code}}.dump() << "\n";
    return code;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(kExitValidation, "usage", e.what());
  }

  try {
    for (const auto& [sub, h] : handlers) {
      if (!sub->parsed()) continue;
      job.command = sub->get_name();
      const Output o = h(job);
      const std::string body = job.format == "text" ? o.text : o.data.dump(2) + "\n";
      if (job.output.empty()) {
        out << body;
      } else {
        std::ofstream f(job.output);
        if (!f) throw ValidationError("cannot write " + job.output);
        f << body;
      }
      return kExitOk;
    }
    return fail(kExitValidation, "usage", "no command given");
  } catch (const ResonanceError& e) {
    return fail(kExitResonance, e.kind(), e.what());
  } catch (const ValidationError& e) {
    return fail(kExitValidation, e.kind(), e.what());
  } catch (const Error& e) {
    return fail(kExitConsistency, e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(kExitConsistency, "internal", e.what());
  }
}

}  // namespace hypergm
