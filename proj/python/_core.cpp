/*
   Copyright 2026 The p1h Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "p1h/io.hpp"

namespace py = pybind11;
using namespace p1h;

namespace {

py::object to_py(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

io::json from_py(const py::object& o) {
  return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::list matrix_to_list(const Matrix<Scalar>& m) {
  py::list rows;
  for (int i = 0; i < m.rows(); ++i) {
    py::list row;
    for (int j = 0; j < m.cols(); ++j) row.append(m(i, j).str());
    rows.append(row);
  }
  return rows;
}

UnpointedRat as_unpointed(const std::string& s, Field f) {
  io::Function fn = io::parse_function(s, f);
  if (auto* r = std::get_if<RatFun>(&fn)) return UnpointedRat::from_pointed(*r);
  return std::get<UnpointedRat>(fn);
}

// Pointed reading when both inputs parse as pointed maps, otherwise unpointed.
struct Pair {
  std::optional<RatFun> f, g;
  std::optional<UnpointedRat> u, v;
};

Pair read_pair(const std::string& a, const std::string& b, Field f, bool unpointed) {
  Pair p;
  if (!unpointed) {
    try {
      RatFun x = io::parse_pointed(a, f);
      p.g = io::parse_pointed(b, f);
      p.f = x;
      return p;
    } catch (const io::ParseError&) {
      throw;
    } catch (const RejectedPoint&) {
      throw;
    } catch (const Error&) {
      p.g.reset();
    }
  }
  p.u = unpointed ? io::parse_unpointed(a, f) : as_unpointed(a, f);
  p.v = unpointed ? io::parse_unpointed(b, f) : as_unpointed(b, f);
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Naive homotopy classes of rational functions.";
  static py::exception<Error> error(m, "P1hError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<RatFun>(m, "RatFun")
      .def(py::init([](const std::string& text, const std::string& field) {
             return io::parse_pointed(text, Field::parse(field));
           }),
           py::arg("text"), py::arg("field") = "Q")
      .def_property_readonly("degree", &RatFun::degree)
      .def_property_readonly("field", [](const RatFun& r) { return r.field().name(); })
      .def_property_readonly("resultant", [](const RatFun& r) { return r.resultant().str(); })
      .def("bezout", [](const RatFun& r) { return matrix_to_list(bezout_form(r)); })
      .def("hankel", [](const RatFun& r) { return matrix_to_list(hankel_of(r).matrix()); })
      .def("invariant", [](const RatFun& r) { return to_py(io::to_json(pointed_invariant(r))); })
      .def("oplus", [](const RatFun& a, const RatFun& b) { return oplus(a, b); })
      .def("compose", [](const RatFun& a, const RatFun& b) { return compose(a, b); })
      .def("equivalent", [](const RatFun& a, const RatFun& b) { return pointed_equiv(a, b); })
      .def("__eq__", [](const RatFun& a, const RatFun& b) { return a == b; })
      .def("__str__", [](const RatFun& r) { return io::format(r); })
      .def("__repr__", [](const RatFun& r) { return "RatFun('" + io::format(r) + "')"; });

  m.def(
      "classify",
      [](const std::string& text, const std::string& field, bool unpointed) {
        const Field f = Field::parse(field);
        io::Function fn = unpointed ? io::Function(io::parse_unpointed(text, f)) : io::parse_function(text, f);
        if (auto* r = std::get_if<RatFun>(&fn)) {
          io::json j = io::to_json(pointed_invariant(*r));
          j["kind"] = "pointed";
          return to_py(j);
        }
        io::json j = io::to_json(unpointed_invariant(std::get<UnpointedRat>(fn)));
        j["kind"] = "unpointed";
        return to_py(j);
      },
      py::arg("function"), py::arg("field") = "Q", py::arg("unpointed") = false);

  m.def(
      "equiv",
      [](const std::string& a, const std::string& b, const std::string& field, bool unpointed) {
        Pair p = read_pair(a, b, Field::parse(field), unpointed);
        return p.f ? pointed_equiv(*p.f, *p.g) : unpointed_equiv(*p.u, *p.v);
      },
      py::arg("f"), py::arg("g"), py::arg("field") = "Q", py::arg("unpointed") = false);

  m.def(
      "certify",
      [](const std::string& a, const std::string& b, const std::string& field, bool unpointed) -> py::object {
        Pair p = read_pair(a, b, Field::parse(field), unpointed);
        ConnectResult r = p.f ? connect(*p.f, *p.g) : unpointed_connect(*p.u, *p.v);
        if (r.status != SearchStatus::Found) return py::none();
        return to_py(io::to_json(r.cert));
      },
      py::arg("f"), py::arg("g"), py::arg("field") = "Q", py::arg("unpointed") = false,
      "Certificate as a dict, or None when the maps are not equivalent.");

  m.def(
      "verify",
      [](const py::object& cert) {
        const Verdict v = verify(io::certificate_from_json(from_py(cert)));
        return py::make_tuple(v.ok, v.diagnostic);
      },
      py::arg("certificate"));

  m.def(
      "oracle",
      [](unsigned q, int n, int D, const std::string& target, int d, int workers) {
        oracle::EnumSpec s;
        s.q = q;
        s.n = n;
        s.D = D;
        s.d = d;
        s.workers = workers;
        s.target = oracle::parse_target(target);
        oracle::validate(s);
        oracle::CrossCheck r;
        {
          py::gil_scoped_release release;
          r = oracle::cross_check(s);
        }
        return to_py(io::to_json(s, r));
      },
      py::arg("q"), py::arg("n"), py::arg("D") = -1, py::arg("target") = "ratfun", py::arg("d") = 2,
      py::arg("workers") = 1);

  m.def(
      "pd_equiv",
      [](const std::string& a, const std::string& b, const std::string& field) {
        const Field f = Field::parse(field);
        return pd_equiv(io::parse_pd(a, f), io::parse_pd(b, f));
      },
      py::arg("p"), py::arg("q"), py::arg("field"));

  m.def(
      "pd_certify",
      [](const std::string& a, const std::string& field) {
        return to_py(io::to_json(pd_cert(io::parse_pd(a, Field::parse(field)))));
      },
      py::arg("point"), py::arg("field"));
}
