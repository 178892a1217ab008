// kd3: validate extended Kirby diagrams, compute their invariants, apply
// moves, and build surface-knot exteriors from banded unlinks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kd3/format.hpp"
#include "kd3/invariants.hpp"
#include "kd3/moves.hpp"
#include "kd3/surface.hpp"
#include "kd3/wirtinger.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

bool color_enabled() {
  const char* v = std::getenv("KD3_COLOR");
  return !(v && std::string(v) == "0");
}

std::string red(const std::string& s) {
  return color_enabled() ? "\033[31m" + s + "\033[0m" : s;
}

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

kd3::ParsedDocument load_document(const std::string& path) {
  auto r = kd3::parse_kd3(slurp(path));
  if (!r.ok()) {
    std::ostringstream msg;
    for (auto& e : r.errors)
      msg << path << ":" << e.line << ":" << e.column << ": " << e.message
          << "\n";
    throw DomainError(msg.str());
  }
  return *r.document;
}

kd3::KirbyDiagram load_diagram(const std::string& path) {
  auto doc = load_document(path);
  if (!doc.diagram())
    throw DomainError(path + ": expected a kirby diagram document");
  return *doc.diagram();
}

void write_output(const std::optional<std::string>& path,
                  const std::string& text) {
  if (!path) return;
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + *path);
  out << text;
}

std::string ab_str(const kd3::Abelianization& ab) {
  std::ostringstream out;
  out << "free rank " << ab.free_rank;
  if (ab.torsion.empty()) {
    out << ", torsion none";
  } else {
    out << ", torsion";
    for (auto d : ab.torsion) out << " " << d;
  }
  return out.str();
}

std::string digest_str(const kd3::InvariantDigest& g) {
  std::ostringstream out;
  out << "counts=(" << g.counts[0];
  for (int i = 1; i < 5; ++i) out << "," << g.counts[i];
  out << ") snf=[";
  for (size_t i = 0; i < g.linking_snf.size(); ++i)
    out << (i ? "," : "") << g.linking_snf[i];
  out << "] ab(pi1)={" << ab_str(g.pi1_ab) << "}";
  return out.str();
}

void print_presentation(std::ostream& out, const kd3::Presentation& p,
                        const std::vector<std::string>& gen_ids) {
  out << "pi1 generators: " << p.gens;
  if (!gen_ids.empty()) {
    out << " (";
    for (size_t i = 0; i < gen_ids.size(); ++i)
      out << (i ? " " : "") << "g" << i + 1 << "=" << gen_ids[i];
    out << ")";
  }
  out << "\n";
  for (auto& r : p.relators) {
    out << "  relator:";
    if (r.empty()) out << " (trivial)";
    for (int x : r) {
      out << " g" << std::abs(x);
      if (x < 0) out << "^-1";
    }
    out << "\n";
  }
}

int cmd_validate(const std::string& path) {
  auto doc = load_document(path);
  std::vector<kd3::Diagnostic> diags;
  if (auto* d = doc.diagram()) {
    diags = kd3::validate(*d);
    if (doc.pd) {
      auto pd_diags = kd3::validate(*doc.pd);
      diags.insert(diags.end(), pd_diags.begin(), pd_diags.end());
    }
  } else {
    diags = kd3::validate(*doc.banded());
  }
  if (diags.empty()) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (auto& g : diags)
    std::cerr << red("invalid: ") << g.code << ": " << g.detail << "\n";
  return kExitDomain;
}

void print_invariants(std::ostream& out, const kd3::KirbyDiagram& d) {
  out << "handle counts: (" << d.zero_handles << "," << d.one_handles.size()
      << "," << d.two_handles.size() << "," << d.three_handles.size() << ","
      << d.four_handles << ")\n";
  out << "euler characteristic: " << kd3::euler_characteristic(d) << "\n";
  auto order = kd3::component_order(d);
  out << "components:";
  for (auto& id : order) out << " " << id;
  out << "\n";
  auto lm = kd3::linking_matrix(d);
  out << "linking matrix:\n" << kd3::serialize_matrix(lm);
  auto snf = kd3::smith_normal_form(lm);
  out << "snf divisors:";
  for (auto v : snf.divisors) out << " " << v;
  out << " (rank " << snf.rank << ")\n";
  auto h = kd3::boundary_homology(d);
  out << "H1 of boundary: " << "free rank " << h.h1_free_rank;
  if (h.h1_torsion.empty()) {
    out << ", torsion none\n";
  } else {
    out << ", torsion";
    for (auto v : h.h1_torsion) out << " " << v;
    out << "\n";
  }
  out << "H2 free rank: " << h.h2_free_rank << "\n";
  auto pi1 = kd3::pi1_of_X(d);
  if (pi1.nonzero_framing_warning)
    out << "note: nonzero framings present; the group read-off assumes "
           "0-framed 2-handles\n";
  print_presentation(out, pi1.presentation, pi1.generator_ids);
  out << "pi1 abelianization: "
      << ab_str(kd3::abelianization(pi1.presentation)) << "\n";
  auto hyp = kd3::hypothesis_report(d);
  out << "3-handles: " << hyp.three_handle_count << "\n";
  out << "H2 free rank bound for spherical classes: " << hyp.h2_free_rank
      << "\n";
  out << "3-handle count within bound: "
      << (hyp.count_within_bound ? "yes" : "no") << "\n";
  out << "all 3-handle data nonzero: "
      << (hyp.all_spheres_nonzero ? "yes" : "no") << "\n";
  if (hyp.inessential_flag) {
    out << "inessential attaching sphere flagged:";
    for (auto& id : hyp.zero_spheres) out << " " << id;
    out << "\n";
  }
}

int cmd_invariants(const std::string& path) {
  kd3::KirbyDiagram d = load_diagram(path);
  auto diags = kd3::validate(d);
  if (!diags.empty()) {
    for (auto& g : diags)
      std::cerr << red("invalid: ") << g.code << ": " << g.detail << "\n";
    return kExitDomain;
  }
  print_invariants(std::cout, d);
  return kExitOk;
}

int cmd_move(const std::string& path, const std::string& kind,
             const std::string& actor, const std::string& target, int sign,
             const std::optional<std::string>& out_path) {
  kd3::KirbyDiagram d = load_diagram(path);
  auto k = kd3::parse_move_kind(kind);
  if (!k) throw DomainError("unknown move kind " + kind);
  kd3::MoveRequest req{*k, actor, target, sign};
  auto out = kd3::apply_move(d, req);
  std::cout << "move " << kind << " " << actor << " " << target
            << " sign=" << (sign > 0 ? "+1" : "-1") << "\n";
  std::cout << "  applied: " << (out.report.applied ? "yes" : "no") << "\n";
  std::cout << "  reason: " << out.report.reason << "\n";
  std::cout << "  pre:  " << digest_str(out.report.pre) << "\n";
  std::cout << "  post: " << digest_str(out.report.post) << "\n";
  if (!out.report.applied) return kExitDomain;
  std::string text = kd3::serialize_kd3(out.diagram);
  std::cout << "result:\n" << text;
  write_output(out_path, text);
  return kExitOk;
}

int cmd_script(const std::string& path, const std::string& script_path,
               const std::optional<std::string>& out_path) {
  kd3::KirbyDiagram d = load_diagram(path);
  std::string err;
  auto script = kd3::parse_move_script(slurp(script_path), &err);
  if (!script) throw DomainError(script_path + ": " + err);
  auto [result, reports] = kd3::run_script(d, *script);
  for (size_t i = 0; i < reports.size(); ++i) {
    auto& r = (*script)[i];
    std::cout << "move " << i + 1 << ": " << kd3::move_kind_name(r.kind) << " "
              << r.actor << " " << r.target
              << " sign=" << (r.sign > 0 ? "+1" : "-1") << "\n";
    std::cout << "  applied: " << (reports[i].applied ? "yes" : "no") << "\n";
    std::cout << "  reason: " << reports[i].reason << "\n";
    std::cout << "  pre:  " << digest_str(reports[i].pre) << "\n";
    std::cout << "  post: " << digest_str(reports[i].post) << "\n";
  }
  bool all = reports.size() == script->size() &&
             (reports.empty() || reports.back().applied);
  std::string text = kd3::serialize_kd3(result);
  std::cout << "result:\n" << text;
  write_output(out_path, text);
  return all ? kExitOk : kExitDomain;
}

int cmd_exterior(const std::string& path,
                 const std::optional<std::string>& out_path) {
  auto doc = load_document(path);
  if (!doc.banded())
    throw DomainError(path + ": expected a banded-unlink document");
  const kd3::BandedUnlink& b = *doc.banded();
  auto diags = kd3::validate(b);
  if (!diags.empty()) {
    for (auto& g : diags)
      std::cerr << red("invalid: ") << g.code << ": " << g.detail << "\n";
    return kExitDomain;
  }
  kd3::Int lm = kd3::resolve(b, kd3::Which::L_minus).component_count;
  kd3::Int lp = kd3::resolve(b, kd3::Which::L_plus).component_count;
  std::cout << "L- components: " << lm << "\n";
  std::cout << "L+ components: " << lp << "\n";
  std::cout << "bands: " << b.bands.size() << "\n";
  std::cout << "surface euler characteristic: " << kd3::surface_euler(b)
            << "\n";
  std::cout << "3-handles: " << kd3::three_handle_count(b) << "\n";
  kd3::KirbyDiagram d = kd3::exterior_kirby(b);
  std::cout << "exterior euler characteristic: "
            << kd3::euler_characteristic(d) << "\n";
  std::string text = kd3::serialize_kd3(d);
  std::cout << "exterior diagram:\n" << text;
  write_output(out_path, text);
  return kExitOk;
}

int cmd_check_basis(const std::string& path, bool mod2, bool integral,
                    bool pairing) {
  if (mod2 + integral + pairing != 1)
    throw DomainError("choose exactly one of --mod2, --integral, --pairing");
  std::string err;
  auto m = kd3::parse_matrix(slurp(path), &err);
  if (!m) throw DomainError(path + ": " + err);
  bool ok = false;
  if (pairing) {
    ok = kd3::meridian_pairing_check(*m);
  } else if (mod2) {
    std::vector<std::vector<int>> rows(m->rows,
                                       std::vector<int>(m->cols));
    for (int i = 0; i < m->rows; ++i)
      for (int j = 0; j < m->cols; ++j)
        rows[i][j] = (int)(((m->at(i, j) % 2) + 2) % 2);
    ok = kd3::check_basis_mod2(rows);
  } else {
    std::vector<std::vector<kd3::Int>> rows(m->rows,
                                            std::vector<kd3::Int>(m->cols));
    for (int i = 0; i < m->rows; ++i)
      for (int j = 0; j < m->cols; ++j) rows[i][j] = m->at(i, j);
    ok = kd3::check_basis_integral(rows);
  }
  std::cout << (ok ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_homs(const std::string& path, const std::string& target) {
  std::string err;
  auto p = kd3::parse_presentation(slurp(path), &err);
  if (!p) throw DomainError(path + ": " + err);
  auto g = kd3::parse_target(target);
  std::cout << kd3::count_homs(*p, g) << "\n";
  return kExitOk;
}

int cmd_report(const std::string& path) {
  auto doc = load_document(path);
  if (auto* b = doc.banded()) {
    auto diags = kd3::validate(*b);
    std::cout << "document kind: banded unlink\n";
    std::cout << "valid: " << (diags.empty() ? "yes" : "no") << "\n";
    for (auto& g : diags) std::cout << "  " << g.code << ": " << g.detail << "\n";
    if (!diags.empty()) return kExitDomain;
    std::cout << "canonical form:\n" << kd3::serialize_kd3(*b);
    return kExitOk;
  }
  const kd3::KirbyDiagram& d = *doc.diagram();
  auto diags = kd3::validate(d);
  std::cout << "document kind: kirby diagram\n";
  std::cout << "valid: " << (diags.empty() ? "yes" : "no") << "\n";
  for (auto& g : diags) std::cout << "  " << g.code << ": " << g.detail << "\n";
  if (!diags.empty()) return kExitDomain;
  print_invariants(std::cout, d);
  if (doc.pd) {
    auto pd_diags = kd3::validate(*doc.pd);
    std::cout << "pd attached: yes (" << doc.pd->crossings.size()
              << " crossings, " << (pd_diags.empty() ? "valid" : "INVALID")
              << ")\n";
    if (pd_diags.empty()) {
      auto p = kd3::pi1_of_boundary(*doc.pd);
      auto q = kd3::tietze_simplify(p);
      std::cout << "pi1 of boundary (simplified): " << q.gens
                << " generators, " << q.relators.size() << " relators\n";
      std::cout << "boundary abelianization: "
                << ab_str(kd3::abelianization(q)) << "\n";
    }
  }
  std::cout << "canonical form:\n" << kd3::serialize_kd3(d, doc.pd);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extended Kirby diagram toolkit"};
  app.require_subcommand(1);

  std::string in_path, script_path, kind, actor, target, target_group;
  std::optional<std::string> out_path;
  int sign = 1;
  bool mod2 = false, integral = false, pairing = false;

  auto* validate_cmd = app.add_subcommand("validate", "check a kd3 document");
  validate_cmd->add_option("file", in_path)->required();

  auto* inv = app.add_subcommand("invariants", "print diagram invariants");
  inv->add_option("file", in_path)->required();

  auto* move = app.add_subcommand("move", "apply a single move");
  move->add_option("file", in_path)->required();
  move->add_option("kind", kind)->required();
  move->add_option("actor", actor)->required();
  move->add_option("target", target)->required();
  move->add_option("--sign", sign)->default_val(1);
  move->add_option("-o,--out", out_path);

  auto* script = app.add_subcommand("script", "run a move script");
  script->add_option("file", in_path)->required();
  script->add_option("movescript", script_path)->required();
  script->add_option("-o,--out", out_path);

  auto* ext = app.add_subcommand("exterior",
                                 "build the exterior of a banded unlink");
  ext->add_option("file", in_path)->required();
  ext->add_option("-o,--out", out_path);

  auto* basis = app.add_subcommand("check-basis", "basis/pairing checks");
  basis->add_option("file", in_path)->required();
  basis->add_flag("--mod2", mod2);
  basis->add_flag("--integral", integral);
  basis->add_flag("--pairing", pairing);

  auto* homs = app.add_subcommand("homs", "count homomorphisms");
  homs->add_option("file", in_path)->required();
  homs->add_option("--target", target_group)->required();

  auto* report = app.add_subcommand("report", "full validation + invariants");
  report->add_option("file", in_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(validate_cmd)) return cmd_validate(in_path);
    if (app.got_subcommand(inv)) return cmd_invariants(in_path);
    if (app.got_subcommand(move))
      return cmd_move(in_path, kind, actor, target, sign, out_path);
    if (app.got_subcommand(script))
      return cmd_script(in_path, script_path, out_path);
    if (app.got_subcommand(ext)) return cmd_exterior(in_path, out_path);
    if (app.got_subcommand(basis))
      return cmd_check_basis(in_path, mod2, integral, pairing);
    if (app.got_subcommand(homs)) return cmd_homs(in_path, target_group);
    if (app.got_subcommand(report)) return cmd_report(in_path);
  } catch (const DomainError& e) {
    std::cerr << red("error: ") << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << red("error: ") << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
