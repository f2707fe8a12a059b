// Command-line front end: every operation of the library behind text or
// JSON output with a stable schema, plus the fixture reproduction harness.

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "ezdkit/family.hpp"
#include "ezdkit/generic.hpp"

using json = nlohmann::ordered_json;
using namespace ezdkit;

namespace {

struct GlobalOpts {
  bool json_out = false;
  std::uint64_t seed = 0;
  int threads = 0; // 0 = available parallelism
};

int effective_threads(const GlobalOpts& g) {
  if (g.threads > 0) return g.threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? (int)hw : 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) fail(Err::BadArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AlgebraPtr load_algebra(const std::string& path) {
  return GradedAlgebra::build(parse_presentation(read_file(path)));
}

PresentedModule load_module(const AlgebraPtr& A, const std::string& path) {
  return PresentedModule::cokernel(A, amat_from_rows(A, parse_matrix_rows(read_file(path), A)));
}

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "undecided";
  }
}

json ta_json(const TAReport& rep) {
  json checks = json::array();
  for (const auto& [name, ok] : rep.checks) checks.push_back({{"check", name}, {"ok", ok}});
  json out{{"ok", rep.ok}, {"checks", checks}};
  if (!rep.ok) out["failure"] = rep.failure;
  return out;
}

json tr_json(const TRReport& rep) {
  json out;
  switch (rep.verdict) {
    case TRReport::Kind::Certified: out["verdict"] = "certified"; break;
    case TRReport::Kind::VerifiedToDegree: out["verdict"] = "verified_to_degree"; break;
    case TRReport::Kind::Refuted: out["verdict"] = "refuted"; break;
  }
  out["bound"] = rep.bound;
  out["ext_module"] = rep.ext_module;
  out["ext_dual"] = rep.ext_dual;
  if (rep.verdict == TRReport::Kind::Refuted) {
    out["refuted_index"] = rep.refuted_index;
    out["refuted_side"] = rep.refuted_side;
  }
  if (rep.period_lo >= 0) out["period"] = {rep.period_lo, rep.period_hi};
  return out;
}

json cert_json(const GradedAlgebra& A, const ExactPairCertificate& c) {
  return json{{"element", A.render(c.x)},
              {"partner", A.render(c.w)},
              {"len_x", c.len_x},
              {"len_w", c.len_w},
              {"ann_x_dim", c.ann_x.dim()},
              {"ann_w_dim", c.ann_w.dim()},
              {"checks",
               {{"ann_x_equals_ideal_w", c.ann_x_is_w},
                {"ann_w_equals_ideal_x", c.ann_w_is_x},
                {"period2_exact", c.period2_exact}}}};
}

json member_json(const FamilyMember& m) {
  return json{{"label", m.label},
              {"n", m.n},
              {"presentation", m.presentation.render()},
              {"length", m.length},
              {"betti", m.betti},
              {"indecomposable", verdict_str(m.indecomposable)},
              {"totally_acyclic", ta_json(m.ta)}};
}

struct CommandOutcome {
  std::string status = "ok"; // ok | error | undecided
  json payload;
  std::vector<std::string> diagnostics;
};

int emit(const GlobalOpts& g, const std::string& command, const CommandOutcome& out,
         const std::string& text) {
  if (g.json_out) {
    json doc{{"schema", 1},
             {"command", command},
             {"status", out.status},
             {"payload", out.payload},
             {"diagnostics", out.diagnostics}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  }
  if (out.status == "ok") return 0;
  if (out.status == "undecided") return 2;
  return 1;
}

std::vector<FElem> parse_lambdas(const AlgebraPtr& A, const std::string& text) {
  const FieldPtr F = A->field();
  std::vector<FElem> out;
  if (text == "all") {
    if (!F->finite()) fail(Err::InfiniteField, "--lambdas all needs a finite field");
    for (std::uint64_t i = 0; i < F->order(); ++i) out.push_back(F->element_at(i));
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    AElem v = parse_element(item, A);
    for (int i = 1; i < A->dim(); ++i)
      if (!F->is_zero(v.c[i])) fail(Err::BadArgument, "lambda '" + item + "' is not a scalar");
    out.push_back(v.c[0]);
  }
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int n = std::stoi(text);
    return {n, n};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact zero divisors and totally reflexive module families"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_flag("--json", g.json_out, "machine-readable output (schema 1)");
  app.add_option("--seed", g.seed, "seed for randomized searches");
  app.add_option("--threads", g.threads, "worker threads (default: available parallelism)");

  std::string file, elem, mfile, mfile2, mode = "all", lambdas = "all", nrange = "1..4",
                                         field_spec = "GF(101)";
  std::string wtxt, xtxt, ytxt, yptxt, ztxt;
  std::uint64_t budget = 1000000, trials = 100;
  int power = 1, nsize = 3, esize = 3, betti_n = -1, tr_n = -1;
  bool want_indec = false;

  auto* algebra = app.add_subcommand("algebra", "algebra inspection");
  auto* alg_info = algebra->add_subcommand("info", "Hilbert series, socle, Gorenstein, short");
  alg_info->add_option("file", file, "algebra definition file")->required();

  auto* ezd = app.add_subcommand("ezd", "exact zero divisor operations");
  auto* ezd_check = ezd->add_subcommand("check", "certify one element");
  ezd_check->add_option("file", file)->required();
  ezd_check->add_option("--elem", elem, "element expression")->required();
  auto* ezd_scan = ezd->add_subcommand("scan", "exhaustive scan over a finite field");
  ezd_scan->add_option("file", file)->required();
  ezd_scan->add_option("--mode", mode, "all | proj");
  ezd_scan->add_option("--budget", budget, "element budget");
  auto* ezd_minors = ezd->add_subcommand("minors", "partner via signed maximal minors");
  ezd_minors->add_option("file", file)->required();
  ezd_minors->add_option("--elem", elem)->required();
  auto* ezd_conca = ezd->add_subcommand("conca", "Conca generator test");
  ezd_conca->add_option("file", file)->required();
  ezd_conca->add_option("--elem", elem)->required();

  auto* family = app.add_subcommand("family", "module family builders");
  auto* fam_build = family->add_subcommand("build", "sizes n = A..B from (w, x, y, z)");
  fam_build->add_option("file", file)->required();
  fam_build->add_option("--w", wtxt)->required();
  fam_build->add_option("--x", xtxt)->required();
  fam_build->add_option("--y", ytxt)->required();
  fam_build->add_option("--z", ztxt)->required();
  fam_build->add_option("--n", nrange, "range A..B");
  auto* fam_bt2 = family->add_subcommand("bt2", "lambda-family of one size");
  fam_bt2->add_option("file", file)->required();
  fam_bt2->add_option("--n", nsize)->required();
  fam_bt2->add_option("--w", wtxt)->required();
  fam_bt2->add_option("--x", xtxt)->required();
  fam_bt2->add_option("--y", ytxt)->required();
  fam_bt2->add_option("--yprime", yptxt)->required();
  fam_bt2->add_option("--z", ztxt)->required();
  fam_bt2->add_option("--lambdas", lambdas, "all or a comma list");
  auto* fam_findz = family->add_subcommand("findz", "z completing (w, x, y)");
  fam_findz->add_option("file", file)->required();
  fam_findz->add_option("--w", wtxt)->required();
  fam_findz->add_option("--x", xtxt)->required();
  fam_findz->add_option("--y", ytxt)->required();
  auto* fam_finddata = family->add_subcommand("finddata", "(y, y', z) for the lambda families");
  fam_finddata->add_option("file", file)->required();
  fam_finddata->add_option("--w", wtxt)->required();
  fam_finddata->add_option("--x", xtxt)->required();

  auto* module = app.add_subcommand("module", "presented module operations");
  auto* mod_info = module->add_subcommand("info", "length, Betti, indecomposability, TR");
  mod_info->add_option("file", file)->required();
  mod_info->add_option("--matrix", mfile)->required();
  mod_info->add_option("--betti", betti_n, "Betti window size");
  mod_info->add_flag("--indec", want_indec, "decide indecomposability");
  mod_info->add_option("--tr", tr_n, "bounded total-reflexivity check");
  auto* mod_iso = module->add_subcommand("iso", "isomorphism test");
  mod_iso->add_option("file", file)->required();
  mod_iso->add_option("--matrix", mfile)->required();
  mod_iso->add_option("--matrix2", mfile2)->required();
  auto* mod_push = module->add_subcommand("pushout", "pushout along multiplication by x^j");
  mod_push->add_option("file", file)->required();
  mod_push->add_option("--matrix", mfile)->required();
  mod_push->add_option("--elem", elem)->required();
  mod_push->add_option("--power", power);

  auto* generic = app.add_subcommand("generic", "random quadratic algebras");
  auto* gen_sample = generic->add_subcommand("sample", "density of exact zero divisors");
  gen_sample->add_option("--e", esize)->required();
  gen_sample->add_option("--field", field_spec, "e.g. GF(101)");
  gen_sample->add_option("--trials", trials);
  gen_sample->add_option("--seed", g.seed);

  // global flags may appear after the subcommand
  for (auto* grp : app.get_subcommands({})) {
    grp->fallthrough();
    for (auto* sub : grp->get_subcommands({})) sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command = "?";
  try {
    CommandOutcome out;
    std::ostringstream text;

    if (alg_info->parsed()) {
      command = "algebra.info";
      auto A = load_algebra(file);
      IdealView soc = A->socle();
      out.payload = {{"field", A->field()->finite()
                                   ? "GF(" + std::to_string(A->field()->order()) + ")"
                                   : "QQ"},
                     {"e", A->embdim()},
                     {"hilbert", A->hilbert()},
                     {"dim", A->dim()},
                     {"top_degree", A->top_degree()},
                     {"socle_dim", soc.dim()},
                     {"gorenstein", A->is_gorenstein()},
                     {"short", A->is_short()}};
      text << "hilbert: [";
      for (size_t i = 0; i < A->hilbert().size(); ++i)
        text << (i ? ", " : "") << A->hilbert()[i];
      text << "]\ne = " << A->embdim() << ", dim = " << A->dim() << ", socle dim = " << soc.dim()
           << "\ngorenstein: " << (A->is_gorenstein() ? "yes" : "no")
           << ", short (m^3 = 0): " << (A->is_short() ? "yes" : "no") << "\n";
    } else if (ezd_check->parsed()) {
      command = "ezd.check";
      auto A = load_algebra(file);
      AElem x = parse_element(elem, A);
      EzdOutcome o = is_exact_zero_divisor(x);
      if (o.ok()) {
        out.payload = {{"is_ezd", true}, {"certificate", cert_json(*A, *o.cert)}};
        text << "exact zero divisor: yes\npartner: " << A->render(o.cert->w)
             << "\nl((x)) = " << o.cert->len_x << ", l((w)) = " << o.cert->len_w << "\n";
      } else {
        out.payload = {{"is_ezd", false},
                       {"reason", o.reason == NotEzdReason::AnnNotCyclic ? "AnnNotCyclic"
                                                                         : "PartnerFailsBack"}};
        text << "exact zero divisor: no\n";
      }
    } else if (ezd_scan->parsed()) {
      command = "ezd.scan";
      auto A = load_algebra(file);
      ScanOptions opts;
      opts.mode = mode == "proj" ? ScanMode::ProjectiveLines : ScanMode::AllOfM;
      opts.budget = budget;
      opts.threads = effective_threads(g);
      ScanReport rep = scan_ezd(A, opts);
      json wit = json::array();
      for (const auto& c : rep.witnesses)
        wit.push_back({{"element", A->render(c.x)}, {"partner", A->render(c.w)}});
      out.payload = {{"mode", mode == "proj" ? "projective_lines" : "all_of_m"},
                     {"scanned", rep.scanned},
                     {"ezd_count", rep.ezd_count},
                     {"conca_count", rep.conca_count},
                     {"witnesses", wit}};
      text << "scanned " << rep.scanned << " elements\nexact zero divisors: " << rep.ezd_count
           << "\nconca generators: " << rep.conca_count << "\n";
    } else if (ezd_minors->parsed()) {
      command = "ezd.minors";
      auto A = load_algebra(file);
      MinorsOutcome mo = partner_via_minors(parse_element(elem, A));
      json mx = json::array(), mw = json::array();
      for (const auto& v : mo.minors_x) mx.push_back(A->field()->to_string(v));
      for (const auto& v : mo.minors_w) mw.push_back(A->field()->to_string(v));
      out.payload = {{"degenerate", mo.degenerate}, {"minors_x", mx}};
      if (mo.degenerate) {
        out.payload["stage"] = mo.degenerate_stage;
        text << "degenerate at stage " << mo.degenerate_stage << "\n";
      } else {
        out.payload["partner"] = A->render(mo.w);
        out.payload["minors_w"] = mw;
        text << "partner: " << A->render(mo.w) << "\n";
      }
    } else if (ezd_conca->parsed()) {
      command = "ezd.conca";
      auto A = load_algebra(file);
      bool c = is_conca_generator(parse_element(elem, A));
      out.payload = {{"conca", c}};
      text << "conca generator: " << (c ? "yes" : "no") << "\n";
    } else if (fam_build->parsed()) {
      command = "family.build";
      auto A = load_algebra(file);
      auto [lo, hi] = parse_range(nrange);
      DecisionBudget b;
      b.seed = g.seed ? g.seed : b.seed;
      FamilyReport rep = build_family(parse_element(wtxt, A), parse_element(xtxt, A),
                                      parse_element(ytxt, A), parse_element(ztxt, A), lo, hi, b);
      json members = json::array();
      bool undecided = false;
      for (const auto& m : rep.members) {
        members.push_back(member_json(m));
        undecided |= m.indecomposable == Verdict::Undecided;
      }
      out.payload = {{"case", rep.hypothesis_case}, {"members", members}};
      if (undecided) out.status = "undecided";
      for (const auto& m : rep.members)
        text << m.label << ": length " << m.length << ", indecomposable "
             << verdict_str(m.indecomposable) << ", TA " << (m.ta.ok ? "ok" : "FAIL") << "\n";
    } else if (fam_bt2->parsed()) {
      command = "family.bt2";
      auto A = load_algebra(file);
      DecisionBudget b;
      b.seed = g.seed ? g.seed : b.seed;
      FamilyReport rep =
          bt2_family(nsize, parse_element(wtxt, A), parse_element(xtxt, A),
                     parse_element(ytxt, A), parse_element(yptxt, A), parse_element(ztxt, A),
                     parse_lambdas(A, lambdas), b);
      json members = json::array(), pairwise = json::array();
      bool undecided = false;
      for (const auto& m : rep.members) {
        members.push_back(member_json(m));
        undecided |= m.indecomposable == Verdict::Undecided;
      }
      int offdiag_iso = 0;
      for (size_t i = 0; i < rep.pairwise.size(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < rep.pairwise[i].size(); ++j) {
          row.push_back(verdict_str(rep.pairwise[i][j]));
          undecided |= rep.pairwise[i][j] == Verdict::Undecided;
          if (i != j && rep.pairwise[i][j] == Verdict::Yes) ++offdiag_iso;
        }
        pairwise.push_back(row);
      }
      out.payload = {{"clause", rep.hypothesis_case},
                     {"members", members},
                     {"pairwise", pairwise},
                     {"offdiagonal_isomorphic", offdiag_iso}};
      if (undecided) out.status = "undecided";
      text << rep.members.size() << " members, clause (" << rep.hypothesis_case
           << "), off-diagonal isomorphic pairs: " << offdiag_iso << "\n";
    } else if (fam_findz->parsed()) {
      command = "family.findz";
      auto A = load_algebra(file);
      auto z =
          find_z_for_y(parse_element(wtxt, A), parse_element(xtxt, A), parse_element(ytxt, A));
      if (z) {
        out.payload = {{"found", true}, {"z", A->render(*z)}};
        text << "z = " << A->render(*z) << "\n";
      } else {
        out.status = "error";
        out.payload = {{"found", false}, {"code", "SearchExhausted"}};
        text << "search exhausted\n";
      }
    } else if (fam_finddata->parsed()) {
      command = "family.finddata";
      auto A = load_algebra(file);
      auto data = find_bt2_data(parse_element(wtxt, A), parse_element(xtxt, A));
      if (data) {
        out.payload = {{"found", true},
                       {"y", A->render(data->y)},
                       {"yprime", A->render(data->yprime)},
                       {"z", A->render(data->z)},
                       {"clause", std::string(1, data->clause)}};
        text << "y = " << A->render(data->y) << "\ny' = " << A->render(data->yprime)
             << "\nz = " << A->render(data->z) << "\nclause (" << data->clause << ")\n";
      } else {
        out.status = "error";
        out.payload = {{"found", false}, {"code", "SearchExhausted"}};
        text << "search exhausted\n";
      }
    } else if (mod_info->parsed()) {
      command = "module.info";
      auto A = load_algebra(file);
      PresentedModule M = load_module(A, mfile);
      out.payload = {{"length", M.length()}, {"min_generators", M.min_generators()}};
      text << "length " << M.length() << ", minimal generators " << M.min_generators() << "\n";
      if (betti_n >= 0) {
        auto b = betti(M, betti_n);
        out.payload["betti"] = b;
        text << "betti:";
        for (int v : b) text << " " << v;
        text << "\n";
      }
      DecisionBudget b;
      b.seed = g.seed ? g.seed : b.seed;
      if (want_indec) {
        IndecResult r = is_indecomposable(M, b);
        out.payload["indecomposable"] = verdict_str(r.verdict);
        if (r.verdict == Verdict::Undecided) out.status = "undecided";
        text << "indecomposable: " << verdict_str(r.verdict) << "\n";
      }
      if (tr_n >= 1) {
        TRReport rep = verify_totally_reflexive_bounded(M, tr_n, b);
        out.payload["tr"] = tr_json(rep);
        text << "totally reflexive: " << tr_json(rep)["verdict"].get<std::string>() << "\n";
      }
    } else if (mod_iso->parsed()) {
      command = "module.iso";
      auto A = load_algebra(file);
      DecisionBudget b;
      b.seed = g.seed ? g.seed : b.seed;
      IsoResult r = is_isomorphic(load_module(A, mfile), load_module(A, mfile2), b);
      out.payload = {{"isomorphic", verdict_str(r.verdict)}};
      if (!r.detail.empty()) out.payload["detail"] = r.detail;
      if (r.verdict == Verdict::Undecided) out.status = "undecided";
      text << "isomorphic: " << verdict_str(r.verdict) << "\n";
    } else if (mod_push->parsed()) {
      command = "module.pushout";
      auto A = load_algebra(file);
      PresentedModule N = load_module(A, mfile);
      PresentedModule P = pushout_extension(N, parse_element(elem, A), power);
      out.payload = {{"length", P.length()},
                     {"min_generators", P.min_generators()},
                     {"base_length", N.length()}};
      text << "pushout length " << P.length() << " with " << P.min_generators()
           << " generators\n";
    } else if (gen_sample->parsed()) {
      command = "generic.sample";
      auto F = Field::make(parse_fieldspec(field_spec));
      SampleReport rep = density_report(esize, F, trials, g.seed, effective_threads(g));
      out.payload = {{"e", rep.e},           {"field", rep.field},
                     {"trials", rep.trials}, {"seed", rep.seed},
                     {"total", rep.total},   {"hilbert_ok", rep.hilbert_ok},
                     {"ezd_ok", rep.ezd_ok}, {"conca_ok", rep.conca_ok}};
      text << "trials " << rep.total << ": hilbert_ok " << rep.hilbert_ok << ", ezd_ok "
           << rep.ezd_ok << ", conca_ok " << rep.conca_ok << "\n";
    }

    return emit(g, command, out, text.str());
  } catch (const Error& e) {
    CommandOutcome out;
    out.status = "error";
    out.payload = {{"code", err_name(e.code())}, {"message", e.what()}};
    return emit(g, command, out, std::string("error: ") + e.what());
  } catch (const ParseError& e) {
    CommandOutcome out;
    out.status = "error";
    out.payload = {{"code", "SyntaxError"},
                   {"message", e.what()},
                   {"line", e.line()},
                   {"col", e.col()}};
    return emit(g, command, out, std::string("error: ") + e.what());
  } catch (const std::exception& e) {
    CommandOutcome out;
    out.status = "error";
    out.payload = {{"code", "Internal"}, {"message", e.what()}};
    return emit(g, command, out, std::string("error: ") + e.what());
  }
}
