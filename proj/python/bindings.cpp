#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rifclark/clark.hpp"
#include "rifclark/contact.hpp"
#include "rifclark/embedding.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/io.hpp"
#include "rifclark/levelset.hpp"
#include "rifclark/poly.hpp"
#include "rifclark/polydisk.hpp"
#include "rifclark/rif.hpp"

namespace py = pybind11;
using namespace rifclark;

namespace {

std::vector<BidiskPoint> to_points(const std::vector<std::pair<Complex, Complex>>& pts) {
  std::vector<BidiskPoint> out;
  for (const auto& [a, b] : pts) out.push_back({a, b});
  return out;
}

}  // namespace

PYBIND11_MODULE(_rifclark, m) {
  m.doc() = "Clark measures of rational inner functions on the bidisk and polydisk";

  static py::exception<Error> error(m, "RifClarkError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<PolyMD>(m, "Poly")
      .def(py::init<std::vector<int>, std::vector<Complex>>(), py::arg("degrees"), py::arg("coeffs"))
      .def_property_readonly("degrees", &PolyMD::degrees)
      .def_property_readonly("coeffs", [](const PolyMD& p) { return std::vector<Complex>(p.coeffs().begin(), p.coeffs().end()); })
      .def("__call__", [](const PolyMD& p, const std::vector<Complex>& z) { return eval(p, z); })
      .def("partial", [](const PolyMD& p, int axis, const std::vector<Complex>& z) { return eval_partial(p, axis, z); });
  m.def("reflect", &reflect);

  py::class_<StabilityCertificate>(m, "StabilityCertificate")
      .def_readonly("is_stable", &StabilityCertificate::is_stable)
      .def_readonly("min_modulus_on_grid", &StabilityCertificate::min_modulus_on_grid)
      .def_readonly("grid_resolution", &StabilityCertificate::grid_resolution);
  m.def("stability_check", &stability_check, py::arg("p"), py::arg("grid_n") = 64);

  py::class_<Rif>(m, "Rif")
      .def_static("from_denominator", py::overload_cast<const PolyMD&>(&Rif::from_denominator))
      .def_static("from_denominator", py::overload_cast<const PolyMD&, const std::vector<int>&>(&Rif::from_denominator))
      .def_property_readonly("degrees", &Rif::degrees)
      .def_property_readonly("numerator", &Rif::numerator)
      .def_property_readonly("denominator", &Rif::denominator)
      .def("__call__", [](const Rif& r, const std::vector<Complex>& z) { return r(z); });
  m.def("expected_total_mass", &expected_total_mass);
  m.def("tridisk_rif", &tridisk_rif);

  py::class_<TorusPoint>(m, "TorusPoint")
      .def(py::init([](Complex a, Complex b) { return TorusPoint{a, b}; }))
      .def_readonly("z1", &TorusPoint::z1)
      .def_readonly("z2", &TorusPoint::z2);

  py::class_<Branch>(m, "Branch")
      .def_readonly("alpha", &Branch::alpha)
      .def_readonly("theta", &Branch::theta)
      .def_readonly("values", &Branch::values)
      .def_readonly("weights", &Branch::weights)
      .def_readonly("jump_index", &Branch::jump_index);

  py::class_<LineComponent>(m, "LineComponent")
      .def_readonly("axis", &LineComponent::axis)
      .def_readonly("tau", &LineComponent::tau)
      .def_readonly("constant", &LineComponent::constant);

  m.def("detect_lines", &detect_lines);
  m.def("find_singularities", &find_singularities, py::arg("phi"), py::arg("scan_grid") = 2048);
  m.def("trace_branches", &trace_branches);
  m.def("max_level_residual", &max_level_residual);

  py::class_<ClarkMeasure>(m, "ClarkMeasure")
      .def_readonly("alpha", &ClarkMeasure::alpha)
      .def_readonly("branches", &ClarkMeasure::branches)
      .def_readonly("lines", &ClarkMeasure::lines)
      .def_readonly("grid_n", &ClarkMeasure::grid_n)
      .def_property_readonly("exceptional", [](const ClarkMeasure& mu) { return mu.kind == AlphaClass::Kind::Exceptional; })
      .def("integrate", [](const ClarkMeasure& mu, const std::function<Complex(Complex, Complex)>& f) { return integrate(mu, f); })
      .def("total_mass", &total_mass)
      .def("to_json", [](const ClarkMeasure& mu) { return io::dump(io::measure_to_json(mu, std::nullopt)); });
  m.def("build_measure", py::overload_cast<const Rif&, Complex, std::size_t>(&build_measure), py::arg("phi"),
        py::arg("alpha"), py::arg("grid_n") = 4096);
  m.def("verify_poisson",
        [](const ClarkMeasure& mu, const Rif& phi, const std::vector<std::pair<Complex, Complex>>& pts) {
          return verify_poisson(mu, phi, to_points(pts)).rel_errors;
        });

  py::class_<HerglotzReconstruction>(m, "HerglotzReconstruction")
      .def("__call__", &HerglotzReconstruction::operator())
      .def("moment", &HerglotzReconstruction::moment);
  m.def("herglotz_reconstruct", &herglotz_reconstruct);

  py::class_<VanishOrderFit>(m, "VanishOrderFit")
      .def_readonly("order", &VanishOrderFit::order)
      .def_readonly("r_squared", &VanishOrderFit::r_squared)
      .def_readonly("c_lower", &VanishOrderFit::c_lower)
      .def_readonly("c_upper", &VanishOrderFit::c_upper);
  m.def("weight_vanish_order",
        py::overload_cast<const Rif&, Complex, std::size_t, const TorusPoint&, std::size_t>(&weight_vanish_order),
        py::arg("phi"), py::arg("alpha"), py::arg("branch"), py::arg("singularity"), py::arg("grid_n") = 4096);
  py::class_<ContactOrderFit>(m, "ContactOrderFit")
      .def_readonly("raw_order", &ContactOrderFit::raw_order)
      .def_readonly("order", &ContactOrderFit::order);
  m.def("branch_contact_order", &branch_contact_order, py::arg("phi"), py::arg("singularity"), py::arg("alpha1"),
        py::arg("alpha2"), py::arg("grid_n") = 4096);
  m.def("nontangential_value", [](const Rif& phi, const std::vector<Complex>& pt) { return nontangential_value(phi, pt).value; });

  py::class_<DensityReport>(m, "DensityReport")
      .def_readonly("distance_zbar1", &DensityReport::distance_zbar1)
      .def_readonly("distance_zbar2", &DensityReport::distance_zbar2)
      .def_property_readonly("verdict", [](const DensityReport& r) { return std::string(to_string(r.verdict)); });
  m.def("density_distance", &density_distance);
  m.def("gram_isometry_error", [](const Rif& phi, const ClarkMeasure& mu, const std::vector<std::pair<Complex, Complex>>& pts) {
    return gram_isometry_check(phi, mu, to_points(pts)).max_abs_error;
  });

  m.def("tridisk_level", &tridisk_level);
  m.def("tridisk_weight", &tridisk_weight);
  py::class_<PolydiskMeasure>(m, "PolydiskMeasure")
      .def_property_readonly("mass", &total_mass_d)
      .def("branch_values", [](const PolydiskMeasure& mu, std::size_t j) { return mu.branches.at(j).values; })
      .def("branch_weights", [](const PolydiskMeasure& mu, std::size_t j) { return mu.branches.at(j).weights; });
  m.def("build_measure_d", &build_measure_d, py::arg("phi"), py::arg("alpha"), py::arg("grid_n"),
        py::arg("stability_grid") = 0);
}
