// Python bindings for the main operations: algebras from presentation
// text, divisor certificates and scans, presented modules, family builders
// and the Grassmannian sampler.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ezdkit/family.hpp"
#include "ezdkit/generic.hpp"

namespace py = pybind11;
using namespace ezdkit;

namespace {

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "undecided";
  }
}

struct PyAlgebra {
  AlgebraPtr A;
};

struct PyModule {
  AlgebraPtr A;
  PresentedModule M;
};

AElem elem_of(const PyAlgebra& a, const std::string& text) { return parse_element(text, a.A); }

py::dict cert_dict(const GradedAlgebra& A, const ExactPairCertificate& c) {
  py::dict d;
  d["element"] = A.render(c.x);
  d["partner"] = A.render(c.w);
  d["len_x"] = c.len_x;
  d["len_w"] = c.len_w;
  d["period2_exact"] = c.period2_exact;
  return d;
}

py::dict ta_dict(const TAReport& rep) {
  py::dict d;
  d["ok"] = rep.ok;
  py::list checks;
  for (const auto& [name, ok] : rep.checks) {
    py::dict c;
    c["check"] = name;
    c["ok"] = ok;
    checks.append(c);
  }
  d["checks"] = checks;
  if (!rep.ok) d["failure"] = rep.failure;
  return d;
}

py::dict member_dict(const FamilyMember& m) {
  py::dict d;
  d["label"] = m.label;
  d["n"] = m.n;
  d["presentation"] = m.presentation.render();
  d["length"] = m.length;
  d["betti"] = m.betti;
  d["indecomposable"] = verdict_str(m.indecomposable);
  d["totally_acyclic"] = m.ta.ok;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact zero divisors and totally reflexive module families";

  py::register_exception<Error>(m, "DomainError");
  py::register_exception<ParseError>(m, "SyntaxError_");

  py::class_<PyAlgebra>(m, "Algebra")
      .def_static(
          "from_source",
          [](const std::string& text) { return PyAlgebra{GradedAlgebra::build(parse_presentation(text))}; },
          py::arg("text"), "Build a graded algebra from presentation text.")
      .def_property_readonly("hilbert", [](const PyAlgebra& a) { return a.A->hilbert(); })
      .def_property_readonly("embdim", [](const PyAlgebra& a) { return a.A->embdim(); })
      .def_property_readonly("dim", [](const PyAlgebra& a) { return a.A->dim(); })
      .def_property_readonly("top_degree", [](const PyAlgebra& a) { return a.A->top_degree(); })
      .def_property_readonly("socle_dim", [](const PyAlgebra& a) { return a.A->socle().dim(); })
      .def_property_readonly("gorenstein", [](const PyAlgebra& a) { return a.A->is_gorenstein(); })
      .def_property_readonly("is_short", [](const PyAlgebra& a) { return a.A->is_short(); })
      .def("render", [](const PyAlgebra& a, const std::string& e) { return a.A->render(elem_of(a, e)); })
      .def(
          "check_ezd",
          [](const PyAlgebra& a, const std::string& e) {
            EzdOutcome o = is_exact_zero_divisor(elem_of(a, e));
            py::dict d;
            d["is_ezd"] = o.ok();
            if (o.ok()) d["certificate"] = cert_dict(*a.A, *o.cert);
            else
              d["reason"] = o.reason == NotEzdReason::AnnNotCyclic ? "AnnNotCyclic"
                                                                   : "PartnerFailsBack";
            return d;
          },
          py::arg("element"))
      .def("is_exact_pair",
           [](const PyAlgebra& a, const std::string& w, const std::string& x) {
             return is_exact_pair(elem_of(a, w), elem_of(a, x));
           })
      .def("is_conca_generator",
           [](const PyAlgebra& a, const std::string& e) { return is_conca_generator(elem_of(a, e)); })
      .def(
          "partner_via_minors",
          [](const PyAlgebra& a, const std::string& e) {
            MinorsOutcome mo = partner_via_minors(elem_of(a, e));
            py::dict d;
            d["degenerate"] = mo.degenerate;
            py::list mx;
            for (const auto& v : mo.minors_x) mx.append(a.A->field()->to_string(v));
            d["minors_x"] = mx;
            if (!mo.degenerate) {
              d["partner"] = a.A->render(mo.w);
              py::list mw;
              for (const auto& v : mo.minors_w) mw.append(a.A->field()->to_string(v));
              d["minors_w"] = mw;
            } else {
              d["stage"] = mo.degenerate_stage;
            }
            return d;
          },
          py::arg("element"))
      .def(
          "scan_ezd",
          [](const PyAlgebra& a, const std::string& mode, std::uint64_t budget, int threads) {
            ScanOptions opts;
            opts.mode = mode == "proj" ? ScanMode::ProjectiveLines : ScanMode::AllOfM;
            opts.budget = budget;
            opts.threads = threads;
            ScanReport rep = scan_ezd(a.A, opts);
            py::dict d;
            d["scanned"] = rep.scanned;
            d["ezd_count"] = rep.ezd_count;
            d["conca_count"] = rep.conca_count;
            py::list wit;
            for (const auto& c : rep.witnesses) wit.append(cert_dict(*a.A, c));
            d["witnesses"] = wit;
            return d;
          },
          py::arg("mode") = "all", py::arg("budget") = 1000000, py::arg("threads") = 1)
      .def("module",
           [](const PyAlgebra& a, const std::string& matrix) {
             return PyModule{a.A, PresentedModule::cokernel(
                                      a.A, amat_from_rows(a.A, parse_matrix_rows(matrix, a.A)))};
           })
      .def("residue_field",
           [](const PyAlgebra& a) { return PyModule{a.A, PresentedModule::residue_field(a.A)}; })
      .def("free_module", [](const PyAlgebra& a, int rank) {
        return PyModule{a.A, PresentedModule::free_module(a.A, rank)};
      });

  py::class_<PyModule>(m, "Module")
      .def_property_readonly("length", [](const PyModule& x) { return x.M.length(); })
      .def_property_readonly("min_generators",
                             [](const PyModule& x) { return x.M.min_generators(); })
      .def_property_readonly("presentation", [](const PyModule& x) { return x.M.pres().render(); })
      .def("betti", [](const PyModule& x, int n) { return betti(x.M, n); }, py::arg("n") = 4)
      .def("syzygy", [](const PyModule& x) { return PyModule{x.A, syzygy(x.M).module}; })
      .def("dual", [](const PyModule& x) { return PyModule{x.A, dual(x.M)}; })
      .def("has_free_summand", [](const PyModule& x) { return has_free_summand(x.M); })
      .def("is_indecomposable",
           [](const PyModule& x) { return std::string(verdict_str(is_indecomposable(x.M).verdict)); })
      .def("is_isomorphic",
           [](const PyModule& x, const PyModule& y) {
             return std::string(verdict_str(is_isomorphic(x.M, y.M).verdict));
           })
      .def("ext1_length", [](const PyModule& x, const PyModule& y) { return ext1_length(x.M, y.M); })
      .def(
          "pushout",
          [](const PyModule& x, const std::string& elem, int power) {
            return PyModule{x.A, pushout_extension(x.M, parse_element(elem, x.A), power)};
          },
          py::arg("element"), py::arg("power") = 1)
      .def(
          "totally_reflexive",
          [](const PyModule& x, int bound) {
            TRReport rep = verify_totally_reflexive_bounded(x.M, bound);
            py::dict d;
            switch (rep.verdict) {
              case TRReport::Kind::Certified: d["verdict"] = "certified"; break;
              case TRReport::Kind::VerifiedToDegree: d["verdict"] = "verified_to_degree"; break;
              case TRReport::Kind::Refuted: d["verdict"] = "refuted"; break;
            }
            d["ext_module"] = rep.ext_module;
            d["ext_dual"] = rep.ext_dual;
            return d;
          },
          py::arg("bound") = 4);

  m.def(
      "theta_matrix",
      [](const PyAlgebra& a, int n, const std::string& w, const std::string& x,
         const std::string& y, const std::string& z) {
        return theta({n, elem_of(a, w), elem_of(a, x), elem_of(a, y), elem_of(a, z)}).render();
      },
      py::arg("algebra"), py::arg("n"), py::arg("w"), py::arg("x"), py::arg("y"), py::arg("z"));

  m.def(
      "verify_totally_acyclic",
      [](const PyAlgebra& a, const std::string& phi, const std::string& psi) {
        return ta_dict(verify_totally_acyclic_periodic(
            amat_from_rows(a.A, parse_matrix_rows(phi, a.A)),
            amat_from_rows(a.A, parse_matrix_rows(psi, a.A))));
      },
      py::arg("algebra"), py::arg("phi"), py::arg("psi"));

  m.def(
      "build_family",
      [](const PyAlgebra& a, const std::string& w, const std::string& x, const std::string& y,
         const std::string& z, int lo, int hi) {
        FamilyReport rep =
            build_family(elem_of(a, w), elem_of(a, x), elem_of(a, y), elem_of(a, z), lo, hi);
        py::list out;
        for (const auto& mem : rep.members) out.append(member_dict(mem));
        return out;
      },
      py::arg("algebra"), py::arg("w"), py::arg("x"), py::arg("y"), py::arg("z"),
      py::arg("n_lo") = 1, py::arg("n_hi") = 3);

  m.def(
      "find_bt2_data",
      [](const PyAlgebra& a, const std::string& w, const std::string& x) -> py::object {
        auto data = find_bt2_data(elem_of(a, w), elem_of(a, x));
        if (!data) return py::none();
        py::dict d;
        d["y"] = a.A->render(data->y);
        d["yprime"] = a.A->render(data->yprime);
        d["z"] = a.A->render(data->z);
        d["clause"] = std::string(1, data->clause);
        return d;
      },
      py::arg("algebra"), py::arg("w"), py::arg("x"));

  m.def(
      "bt2_family",
      [](const PyAlgebra& a, int n, const std::string& w, const std::string& x,
         const std::string& y, const std::string& yprime, const std::string& z,
         const std::vector<std::string>& lambdas) {
        std::vector<FElem> ls;
        for (const auto& t : lambdas) {
          AElem v = parse_element(t, a.A);
          ls.push_back(v.c[0]);
        }
        FamilyReport rep = bt2_family(n, elem_of(a, w), elem_of(a, x), elem_of(a, y),
                                      elem_of(a, yprime), elem_of(a, z), ls);
        py::dict d;
        d["clause"] = rep.hypothesis_case;
        py::list mem;
        for (const auto& x2 : rep.members) mem.append(member_dict(x2));
        d["members"] = mem;
        py::list rows;
        for (const auto& row : rep.pairwise) {
          py::list r;
          for (Verdict v : row) r.append(std::string(verdict_str(v)));
          rows.append(r);
        }
        d["pairwise"] = rows;
        return d;
      },
      py::arg("algebra"), py::arg("n"), py::arg("w"), py::arg("x"), py::arg("y"),
      py::arg("yprime"), py::arg("z"), py::arg("lambdas"));

  m.def(
      "density_report",
      [](int e, const std::string& field, std::uint64_t trials, std::uint64_t seed, int threads) {
        auto F = Field::make(parse_fieldspec(field));
        SampleReport rep = density_report(e, F, trials, seed, threads);
        py::dict d;
        d["e"] = rep.e;
        d["field"] = rep.field;
        d["trials"] = rep.trials;
        d["seed"] = rep.seed;
        d["total"] = rep.total;
        d["hilbert_ok"] = rep.hilbert_ok;
        d["ezd_ok"] = rep.ezd_ok;
        d["conca_ok"] = rep.conca_ok;
        return d;
      },
      py::arg("e"), py::arg("field"), py::arg("trials") = 100, py::arg("seed") = 0,
      py::arg("threads") = 1);
}
