#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "modgrowth/conjugacy.hpp"
#include "modgrowth/error.hpp"
#include "modgrowth/growth.hpp"
#include "modgrowth/identities.hpp"
#include "modgrowth/io.hpp"
#include "modgrowth/orbit.hpp"

namespace py = pybind11;
using namespace modgrowth;

namespace {

template <class T>
std::string repr(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

GroupElement element_arg(const py::object& o) {
  if (py::isinstance<GroupElement>(o)) return o.cast<GroupElement>();
  if (py::isinstance<py::str>(o)) return io::parse_element(o.cast<std::string>());
  const auto v = o.cast<std::vector<std::int64_t>>();
  if (v.size() != 4) throw py::value_error("expected four entries a, b, c, d");
  return GroupElement::normalize(v[0], v[1], v[2], v[3]);
}

RationalPoint point_arg(const py::object& o) {
  if (py::isinstance<RationalPoint>(o)) return o.cast<RationalPoint>();
  return io::parse_point(o.cast<std::string>());
}

Units units_arg(const std::string& s) { return parse_units(s); }

py::dict series_dict(const GrowthSeries& s) {
  py::list radii, counts;
  for (const auto& p : s.points) {
    radii.append(p.radius);
    counts.append(p.count);
  }
  py::dict d;
  d["radius"] = radii;
  d["count"] = counts;
  d["units"] = to_string(s.units);
  return d;
}

GrowthSeries series_arg(const std::vector<double>& radii, const std::vector<std::int64_t>& counts,
                        const std::string& units) {
  if (radii.size() != counts.size()) throw py::value_error("radii and counts differ in length");
  GrowthSeries s;
  s.units = units_arg(units);
  for (std::size_t k = 0; k < radii.size(); ++k) s.points.push_back({radii[k], counts[k]});
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact counting in PSL(2,Z) acting on the upper half-plane";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);
  py::register_exception<io::UsageError>(m, "UsageError", PyExc_ValueError);

  py::class_<GroupElement>(m, "GroupElement")
      .def(py::init([](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
             return GroupElement::normalize(a, b, c, d);
           }),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_static("identity", &GroupElement::identity)
      .def_static("parse", &io::parse_element)
      .def_property_readonly("a", &GroupElement::a)
      .def_property_readonly("b", &GroupElement::b)
      .def_property_readonly("c", &GroupElement::c)
      .def_property_readonly("d", &GroupElement::d)
      .def("entries", [](const GroupElement& g) { return py::make_tuple(g.a(), g.b(), g.c(), g.d()); })
      .def("trace", &GroupElement::trace)
      .def("classify", [](const GroupElement& g) { return to_string(g.classify()); })
      .def("norm_sq", &GroupElement::frobenius_norm_sq)
      .def("inverse", &GroupElement::inverse)
      .def("pow", &GroupElement::pow)
      .def("conjugate", [](const GroupElement& f, const GroupElement& phi) { return conjugate(f, phi); },
           "f phi f^-1 with self as f")
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def("__hash__", [](const GroupElement& g) { return std::hash<GroupElement>{}(g); })
      .def("__str__", &GroupElement::str)
      .def("__repr__", [](const GroupElement& g) { return "GroupElement" + g.str(); });

  py::class_<Point>(m, "Point")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_property_readonly("x", &Point::x)
      .def_property_readonly("y", &Point::y)
      .def("__repr__", &repr<Point>);

  py::class_<RationalPoint>(m, "RationalPoint")
      .def(py::init(&io::parse_point), py::arg("text"))
      .def("to_point", &RationalPoint::to_point)
      .def("apply", &RationalPoint::apply)
      .def(py::self == py::self)
      .def("__str__", &RationalPoint::str)
      .def("__repr__", [](const RationalPoint& p) { return "RationalPoint('" + p.str() + "')"; });

  py::class_<Geodesic>(m, "Geodesic")
      .def_property_readonly("endpoints", &Geodesic::endpoints)
      .def("__repr__", &repr<Geodesic>);

  m.def("distance", &distance, py::arg("z"), py::arg("w"));
  m.def("apply", [](const py::object& g, const Point& z) { return mobius_apply(element_arg(g), z); });
  m.def("axis", [](const py::object& g) { return axis_of(element_arg(g)); });
  m.def(
      "translation_length",
      [](const py::object& g, const std::string& units) { return translation_length(element_arg(g), units_arg(units)); },
      py::arg("g"), py::arg("units") = "hyp");
  m.def("project", &project_to_geodesic, py::arg("z"), py::arg("geodesic"));
  m.def("dist_to_geodesic", &dist_to_geodesic, py::arg("z"), py::arg("geodesic"));

  m.def("enumerate_norm_ball", &enumerate_norm_ball, py::arg("max_norm_sq"), py::arg("threads") = 1);
  m.def(
      "omega_ball",
      [](const py::object& x, double r, const std::string& units, unsigned threads) {
        return omega_ball(point_arg(x).to_point(), convert(r, units_arg(units), Units::Hyperbolic), threads).elements;
      },
      py::arg("x"), py::arg("r"), py::arg("units") = "hyp", py::arg("threads") = 1);
  m.def(
      "orbit_point_count",
      [](const py::object& x, const py::object& y, double r, const std::string& units, unsigned threads) {
        return orbit_point_count(point_arg(x).to_point(), point_arg(y), convert(r, units_arg(units), Units::Hyperbolic),
                                 threads)
            .count;
      },
      py::arg("x"), py::arg("y"), py::arg("r"), py::arg("units") = "hyp", py::arg("threads") = 1);
  m.def(
      "census",
      [](const py::object& x, const std::vector<double>& radii, const std::string& units, unsigned threads) {
        py::list out;
        for (const auto& r : census(point_arg(x), radii, units_arg(units), threads)) {
          py::dict d;
          d["radius"] = r.radius;
          d["omega"] = r.omega_count;
          d["orbit"] = r.orbit_count;
          d["hyperbolic"] = r.frac_hyperbolic;
          d["parabolic"] = r.frac_parabolic;
          d["elliptic"] = r.frac_elliptic;
          d["boundary_hits"] = r.boundary_hits;
          out.append(d);
        }
        return out;
      },
      py::arg("x"), py::arg("radii"), py::arg("units") = "hyp", py::arg("threads") = 1);
  m.def("max_stabilizer_order", &max_stabilizer_order);

  m.def("axis_key", [](const py::object& g) {
    const auto k = axis_key(element_arg(g));
    return py::make_tuple(k.a, k.b, k.c);
  });
  m.def("primitive_root", [](const py::object& g) { return primitive_root(element_arg(g)); });
  m.def(
      "gamma_series",
      [](const py::object& phi, const py::object& x, const py::object& y, const std::vector<double>& radii,
         double A, const std::string& units, unsigned threads) {
        if (radii.empty()) throw py::value_error("no radii");
        const PseudoAnosov p(element_arg(phi));
        const auto q = make_query(p, point_arg(x).to_point(), point_arg(y), radii.back(), units_arg(units), A);
        return series_dict(gamma_series(q, radii, threads));
      },
      py::arg("phi"), py::arg("x"), py::arg("y"), py::arg("radii"), py::arg("A") = 1.75, py::arg("units") = "hyp",
      py::arg("threads") = 1);
  m.def("continued_fraction", [](const py::object& g) {
    const auto t = thickness_diagnostic(element_arg(g));
    py::dict d;
    d["preperiod"] = t.preperiod;
    d["period"] = t.period;
    d["max_quotient"] = t.max_quotient;
    return d;
  });

  m.def(
      "fit_exponent",
      [](const std::vector<double>& radii, const std::vector<std::int64_t>& counts, double lo, double hi) {
        const auto f = fit_exponent(series_arg(radii, counts, "hyp"), {lo, hi});
        py::dict d;
        d["slope"] = f.slope;
        d["intercept"] = f.intercept;
        d["residual_rms"] = f.residual_rms;
        d["n_points"] = f.n_points;
        return d;
      },
      py::arg("radii"), py::arg("counts"), py::arg("lo"), py::arg("hi"));
  m.def("choose_L", &choose_L, py::arg("lam"), py::arg("A"), py::arg("N"), py::arg("h"));
  m.def(
      "constants",
      [](double lam, double A, double L, double N, double h) {
        const auto c = evaluate_constants(lam, A, L, N, h);
        py::dict d;
        d["G_L"] = c.G_L;
        d["G_U"] = c.G_U;
        d["G"] = c.G();
        return d;
      },
      py::arg("lam"), py::arg("A"), py::arg("L"), py::arg("N"), py::arg("h"));
  m.def(
      "calibrate_A",
      [](std::size_t samples, std::uint64_t seed, unsigned threads) {
        const auto c = calibrate_A(samples, seed, threads);
        py::dict d;
        d["A_hyp"] = c.A_hyp;
        d["A_teich"] = c.A_teich;
        d["max_lower_deficit"] = c.max_lower_deficit;
        d["max_upper_excess"] = c.max_upper_excess;
        return d;
      },
      py::arg("samples") = 10000, py::arg("seed") = 1, py::arg("threads") = 1);
  m.def(
      "check_identities",
      [](std::size_t cases, std::uint64_t seed, double tol) {
        py::dict d;
        for (const auto& c : check_identities(cases, seed, tol).checks) d[py::str(c.name)] = c.failures;
        return d;
      },
      py::arg("cases") = 1000, py::arg("seed") = 1, py::arg("tolerance") = 1e-9);
}
