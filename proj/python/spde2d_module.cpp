// Python bindings for the main operations: model quantities, exact spectral
// simulation, the increment statistics and contrast fits, the OU layer, and
// the condition checks.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spde2d/bessel.hpp"
#include "spde2d/conditions.hpp"
#include "spde2d/errors.hpp"
#include "spde2d/field_io.hpp"
#include "spde2d/harness.hpp"

namespace py = pybind11;
using namespace spde2d;

namespace {

InitialSpectrum spectrum_from_list(const std::vector<std::tuple<int, int, double>>& entries) {
    std::vector<std::pair<ModeIndex, double>> converted;
    converted.reserve(entries.size());
    for (const auto& [l1, l2, coeff] : entries) {
        converted.emplace_back(ModeIndex{l1, l2}, coeff);
    }
    return InitialSpectrum{std::move(converted)};
}

py::array_t<double> paths_to_numpy(const CoefficientPaths& paths) {
    py::array_t<double> out({paths.num_steps + 1, paths.L1, paths.L2});
    std::copy(paths.values.begin(), paths.values.end(), out.mutable_data());
    return out;
}

py::array_t<double> field_to_numpy(const FieldData& field) {
    py::array_t<double> out({field.num_steps + 1, field.M1 + 1, field.M2 + 1});
    std::copy(field.values.begin(), field.values.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(spde2d, m) {
    m.doc() = "simulation and calibration toolkit for a 2-d advection-diffusion SPDE";

    py::class_<SpdeParams>(m, "SpdeParams")
        .def(py::init<double, double, double, double>(), py::arg("theta0"), py::arg("theta1"),
             py::arg("eta1"), py::arg("theta2"))
        .def_readwrite("theta0", &SpdeParams::theta0)
        .def_readwrite("theta1", &SpdeParams::theta1)
        .def_readwrite("eta1", &SpdeParams::eta1)
        .def_readwrite("theta2", &SpdeParams::theta2);

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def(py::init<double, double, double>(), py::arg("alpha"), py::arg("mu0"),
             py::arg("epsilon"))
        .def_readwrite("alpha", &NoiseSpec::alpha)
        .def_readwrite("mu0", &NoiseSpec::mu0)
        .def_readwrite("epsilon", &NoiseSpec::epsilon);

    py::class_<DerivedCoeffs>(m, "DerivedCoeffs")
        .def_readonly("kappa", &DerivedCoeffs::kappa)
        .def_readonly("eta", &DerivedCoeffs::eta)
        .def_readonly("gamma_cap", &DerivedCoeffs::gamma_cap);

    m.def("derived_coeffs", [](const SpdeParams& p) { return derived_coeffs(p); });
    m.def("eigenvalue",
          [](const SpdeParams& p, int l1, int l2) { return eigenvalue(p, ModeIndex{l1, l2}); });
    m.def("eigenfunction", [](const SpdeParams& p, int l1, int l2, double y, double z) {
        return eigenfunction(p, ModeIndex{l1, l2}, y, z);
    });
    m.def("mu_weight",
          [](const NoiseSpec& n, int l1, int l2) { return mu_weight(n, ModeIndex{l1, l2}); });
    m.def("check_a1",
          [](const std::vector<std::tuple<int, int, double>>& x0, const SpdeParams& p,
             double alpha0) { return check_a1(spectrum_from_list(x0), p, alpha0); });

    m.def("bessel_j0", &bessel_j0);
    m.def(
        "phi",
        [](double r, double alpha, double theta2, double abs_tol) {
            PhiOptions opts;
            opts.abs_tol = abs_tol;
            return phi(r, alpha, theta2, opts);
        },
        py::arg("r"), py::arg("alpha"), py::arg("theta2"), py::arg("abs_tol") = 1e-9);
    m.def(
        "phi_lattice_oracle",
        [](double r, double alpha, double theta2, double kappa, double eta, double gamma_cap,
           double delta_t, int cutoff) {
            return phi_lattice_oracle(r, alpha, theta2, DerivedCoeffs{kappa, eta, gamma_cap},
                                      delta_t, cutoff);
        },
        py::arg("r"), py::arg("alpha"), py::arg("theta2"), py::arg("kappa"), py::arg("eta"),
        py::arg("gamma_cap"), py::arg("delta_t"), py::arg("cutoff"));

    m.def(
        "simulate_coordinates",
        [](const SpdeParams& params, const NoiseSpec& noise,
           const std::vector<std::tuple<int, int, double>>& x0, int L1, int L2, int N,
           std::uint64_t seed, int threads) {
            return paths_to_numpy(simulate_coordinates(params, noise, spectrum_from_list(x0),
                                                       Truncation{L1, L2}, TimeGrid{N}, seed,
                                                       threads));
        },
        py::arg("params"), py::arg("noise"), py::arg("x0"), py::arg("L1"), py::arg("L2"),
        py::arg("N"), py::arg("seed"), py::arg("threads") = 1);

    m.def(
        "simulate_field",
        [](const SpdeParams& params, const NoiseSpec& noise,
           const std::vector<std::tuple<int, int, double>>& x0, int L1, int L2, int N, int M1,
           int M2, std::uint64_t seed, int threads) {
            const CoefficientPaths paths =
                simulate_coordinates(params, noise, spectrum_from_list(x0), Truncation{L1, L2},
                                     TimeGrid{N}, seed, threads);
            return field_to_numpy(assemble_field(paths, params, SpatialGrid{M1, M2}, threads));
        },
        py::arg("params"), py::arg("noise"), py::arg("x0"), py::arg("L1"), py::arg("L2"),
        py::arg("N"), py::arg("M1"), py::arg("M2"), py::arg("seed"), py::arg("threads") = 1);

    m.def(
        "coordinate_moments",
        [](const SpdeParams& params, const NoiseSpec& noise,
           const std::vector<std::tuple<int, int, double>>& x0, int l1, int l2, double t) {
            const Moments m2 =
                coordinate_moments(params, noise, spectrum_from_list(x0), ModeIndex{l1, l2}, t);
            return std::pair{m2.mean, m2.variance};
        },
        py::arg("params"), py::arg("noise"), py::arg("x0"), py::arg("l1"), py::arg("l2"),
        py::arg("t"));

    m.def("g_l", &g_l, py::arg("x"), py::arg("a"), py::arg("l"));
    m.def("tilde_exp", &tilde_exp, py::arg("h"), py::arg("a"), py::arg("b"));
    m.def("rate_r", &rate_r, py::arg("m"), py::arg("N"), py::arg("epsilon"), py::arg("alpha"),
          py::arg("alpha0"));

    m.def(
        "simulate_ou",
        [](double lambda, double mu, double alpha, double epsilon, double x0, int n,
           std::uint64_t seed) {
            const OuPath path = simulate_ou(OuParams{lambda, mu, alpha, epsilon, x0, n}, seed);
            return py::array_t<double>(static_cast<py::ssize_t>(path.values.size()),
                                       path.values.data());
        },
        py::arg("lambda_"), py::arg("mu"), py::arg("alpha"), py::arg("epsilon"), py::arg("x0"),
        py::arg("n"), py::arg("seed"));
    m.def(
        "contrast_v",
        [](double lambda, double mu, const std::vector<double>& path, double epsilon, double alpha,
           double h) { return contrast_v(lambda, mu, path, epsilon, alpha, h); },
        py::arg("lambda_"), py::arg("mu"), py::arg("path"), py::arg("epsilon"), py::arg("alpha"),
        py::arg("h"));
    m.def(
        "fit_ou",
        [](const std::vector<double>& path, double epsilon, double alpha, double h,
           std::optional<double> mu_known, std::pair<double, double> lambda_box,
           std::pair<double, double> mu_box) {
            const OuFit fit = fit_ou(path, epsilon, alpha, h, mu_known,
                                     Interval{lambda_box.first, lambda_box.second},
                                     Interval{mu_box.first, mu_box.second});
            py::dict out;
            out["lambda_hat"] = fit.lambda_hat;
            out["mu_hat"] = fit.mu_hat ? py::cast(*fit.mu_hat) : py::none();
            out["contrast"] = fit.contrast;
            out["degenerate"] = fit.degenerate;
            return out;
        },
        py::arg("path"), py::arg("epsilon"), py::arg("alpha"), py::arg("h"),
        py::arg("mu_known") = std::nullopt,
        py::arg("lambda_box") = std::pair<double, double>{0.01, 50.0},
        py::arg("mu_box") = std::pair<double, double>{1e-4, 1e3});

    m.def("load_config", &load_config, py::arg("path"));
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("replications", &ExperimentConfig::replications)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir);
    m.def("parse_config", &parse_config_text, py::arg("text"));
    m.def(
        "run_replication",
        [](const ExperimentConfig& config, int rep) {
            const ReplicationResult r = run_replication(config, rep);
            py::dict out;
            out["ok"] = r.ok;
            out["error"] = r.error;
            out["theta1_hat"] = r.coeff.theta1_hat;
            out["eta1_hat"] = r.coeff.eta1_hat;
            out["theta2_hat"] = r.coeff.theta2_hat;
            out["theta0_hat"] = r.reaction.theta0_hat;
            out["mu0_hat"] = r.reaction.mu0_hat ? py::cast(*r.reaction.mu0_hat) : py::none();
            out["flagged"] = r.flagged;
            return out;
        },
        py::arg("config"), py::arg("rep"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "check_conditions",
        [](const ExperimentConfig& config) { return check_conditions(config).to_text(); },
        py::arg("config"));

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<degenerate_data_error>(m, "DegenerateDataError");
    py::register_exception<quadrature_error>(m, "QuadratureError");
}
