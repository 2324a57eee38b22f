// Python bindings for the core simulation operations.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eswap/errors.hpp"
#include "eswap/measures.hpp"
#include "eswap/qstate.hpp"
#include "eswap/shots.hpp"
#include "eswap/swap.hpp"
#include "eswap/sweep.hpp"

namespace py = pybind11;

namespace {

template <typename E>
void register_error(py::module_& m, const char* name, const py::object& base) {
  // One Python exception class per library error type, all under the shared
  // base so callers can catch eswap.Error.
  static py::exception<E> exc(m, name, base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const E& e) {
      PyErr_SetString(exc.ptr(), e.what());
    }
  });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  using namespace eswap;
  m.doc() = "Two-qubit entanglement-swapping simulation core";

  static py::exception<Error> base_exc(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(base_exc.ptr(), e.what());
    }
  });
  const py::object base = py::reinterpret_borrow<py::object>(base_exc);
  register_error<ZeroNormError>(m, "ZeroNormError", base);
  register_error<NotNormalizableError>(m, "NotNormalizableError", base);
  register_error<DimensionMismatchError>(m, "DimensionMismatchError", base);
  register_error<BadIndexError>(m, "BadIndexError", base);
  register_error<BadSubsetError>(m, "BadSubsetError", base);
  register_error<OutOfRangeError>(m, "OutOfRangeError", base);
  register_error<NotPositiveError>(m, "NotPositiveError", base);
  register_error<BadBasisError>(m, "BadBasisError", base);
  register_error<MissingBasisError>(m, "MissingBasisError", base);
  register_error<SingularError>(m, "SingularError", base);
  register_error<ConfigError>(m, "ConfigError", base);
  register_error<UnknownSuiteError>(m, "UnknownSuiteError", base);
  register_error<IoError>(m, "IoError", base);

  // ----------------------------------------------------------- states ----
  py::class_<PureState>(m, "PureState")
      .def_readonly("amps", &PureState::amps)
      .def_readonly("qubit_count", &PureState::qubit_count)
      .def("dim", &PureState::dim)
      .def("__repr__", [](const PureState& s) {
        return "<PureState qubits=" + std::to_string(s.qubit_count) + ">";
      });

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_readonly("entries", &DensityMatrix::entries)
      .def_readonly("qubit_count", &DensityMatrix::qubit_count)
      .def("dim", &DensityMatrix::dim)
      .def("__repr__", [](const DensityMatrix& r) {
        return "<DensityMatrix qubits=" + std::to_string(r.qubit_count) + ">";
      });

  py::class_<BlochVector>(m, "BlochVector")
      .def_readonly("r_x", &BlochVector::r_x)
      .def_readonly("r_y", &BlochVector::r_y)
      .def_readonly("r_z", &BlochVector::r_z)
      .def_readonly("r", &BlochVector::r)
      .def_readonly("theta", &BlochVector::theta)
      .def_readonly("phi", &BlochVector::phi);

  m.def("make_state", &make_state, py::arg("amps"));
  m.def("make_pair_state", &make_pair_state, py::arg("c00"), py::arg("c01"), py::arg("c10"),
        py::arg("c11"));
  m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
  m.def("density_of", &density_of, py::arg("state"));
  m.def("partial_trace",
        py::overload_cast<const DensityMatrix&, const std::vector<int>&>(&partial_trace),
        py::arg("rho"), py::arg("keep"));
  m.def("partial_trace",
        py::overload_cast<const PureState&, const std::vector<int>&>(&partial_trace),
        py::arg("state"), py::arg("keep"));
  m.def("bloch_of", &bloch_of, py::arg("rho"));
  m.def("apply_rz", &apply_rz, py::arg("state"), py::arg("qubit"), py::arg("phi"));
  m.def("haar_random_pure", &haar_random_pure, py::arg("n_qubits"), py::arg("seed"));
  m.def("derive_seed", &derive_seed, py::arg("seed"), py::arg("index"));
  m.def("max_amp_distance", &max_amp_distance, py::arg("a"), py::arg("b"));

  // --------------------------------------------------------- measures ----
  py::class_<MeasureTriple>(m, "MeasureTriple")
      .def_readonly("P", &MeasureTriple::P)
      .def_readonly("C", &MeasureTriple::C)
      .def_readonly("E", &MeasureTriple::E)
      .def_readonly("ccr_residual", &MeasureTriple::ccr_residual);

  m.def("predictability", &predictability, py::arg("rho"));
  m.def("l1_coherence", &l1_coherence, py::arg("rho"));
  m.def("concurrence_pure", &concurrence_pure, py::arg("state"));
  m.def("concurrence_mixed", &concurrence_mixed, py::arg("rho"));
  m.def("measure_triple", &measure_triple, py::arg("state"), py::arg("which_qubit"));

  // ------------------------------------------------------------- swap ----
  py::enum_<BellOutcome>(m, "BellOutcome")
      .value("PhiPlus", BellOutcome::PhiPlus)
      .value("PhiMinus", BellOutcome::PhiMinus)
      .value("PsiPlus", BellOutcome::PsiPlus)
      .value("PsiMinus", BellOutcome::PsiMinus);

  py::class_<OutcomeResult>(m, "OutcomeResult")
      .def_readonly("probability", &OutcomeResult::probability)
      .def_readonly("post_state", &OutcomeResult::post_state)
      .def_readonly("post_concurrence", &OutcomeResult::post_concurrence);

  py::class_<SwapResult>(m, "SwapResult")
      .def_readonly("outcomes", &SwapResult::outcomes)
      .def_readonly("averaged_concurrence", &SwapResult::averaged_concurrence)
      .def("at", &SwapResult::at, py::arg("outcome"),
           py::return_value_policy::reference_internal);

  py::class_<AlignResult>(m, "AlignResult")
      .def_readonly("xi", &AlignResult::xi)
      .def_readonly("eta", &AlignResult::eta)
      .def_readonly("phi_C", &AlignResult::phi_C)
      .def_readonly("phi_Cp", &AlignResult::phi_Cp);

  py::class_<AnalyticPrediction>(m, "AnalyticPrediction")
      .def_readonly("predicted_concurrence", &AnalyticPrediction::predicted_concurrence)
      .def_readonly("hemisphere_sign", &AnalyticPrediction::hemisphere_sign)
      .def_readonly("aligned", &AnalyticPrediction::aligned)
      .def(
          "at",
          [](const AnalyticPrediction& p, BellOutcome o) { return p.at(o); },
          py::arg("outcome"));

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("alignment", &VerifyReport::alignment)
      .def_readonly("prediction", &VerifyReport::prediction)
      .def_readonly("oracle", &VerifyReport::oracle)
      .def_readonly("abs_difference", &VerifyReport::abs_difference)
      .def_readonly("max_difference", &VerifyReport::max_difference);

  m.def("bell_basis", &bell_basis);
  m.def("decompose", &decompose, py::arg("xi"), py::arg("eta"));
  m.def("averaged_entanglement", &averaged_entanglement, py::arg("xi"), py::arg("eta"));
  m.def("align_phases", &align_phases, py::arg("xi"), py::arg("eta"));
  m.def("analytic_concurrences", &analytic_concurrences, py::arg("P_C"), py::arg("C_C"),
        py::arg("P_Cp"), py::arg("C_Cp"), py::arg("hemisphere_sign"));
  m.def("predict_and_verify", &predict_and_verify, py::arg("xi"), py::arg("eta"));

  // ------------------------------------------------------------ shots ----
  py::class_<QubitNoise>(m, "QubitNoise")
      .def(py::init<>())
      .def(py::init([](double eps01, double eps10) {
             return QubitNoise{eps01, eps10};
           }),
           py::arg("eps01"), py::arg("eps10"))
      .def_readwrite("eps01", &QubitNoise::eps01)
      .def_readwrite("eps10", &QubitNoise::eps10);

  py::class_<ReadoutNoise>(m, "ReadoutNoise")
      .def(py::init<>())
      .def_readwrite("per_qubit", &ReadoutNoise::per_qubit)
      .def_static("none", &ReadoutNoise::none, py::arg("n_qubits"))
      .def_static("uniform", &ReadoutNoise::uniform, py::arg("eps01"), py::arg("eps10"),
                  py::arg("n_qubits"))
      .def("subset", &ReadoutNoise::subset, py::arg("qubits"))
      .def("is_zero", &ReadoutNoise::is_zero)
      .def("validate", &ReadoutNoise::validate);

  py::class_<CountsTable>(m, "CountsTable")
      .def_readonly("basis_label", &CountsTable::basis_label)
      .def_readonly("counts", &CountsTable::counts)
      .def_readonly("shots", &CountsTable::shots);

  py::class_<CalibrationMatrix>(m, "CalibrationMatrix")
      .def_readonly("M", &CalibrationMatrix::M)
      .def_readonly("qubit_count", &CalibrationMatrix::qubit_count);

  py::class_<PostselectGroups>(m, "PostselectGroups")
      .def_readonly("observed", &PostselectGroups::observed)
      .def_readonly("composition", &PostselectGroups::composition)
      .def_readonly("exact_probability", &PostselectGroups::exact_probability)
      .def_readonly("conditional_state", &PostselectGroups::conditional_state)
      .def_readonly("shots", &PostselectGroups::shots)
      .def("count", &PostselectGroups::count, py::arg("outcome"))
      .def("sample_conditional", &PostselectGroups::sample_conditional, py::arg("outcome"),
           py::arg("basis"), py::arg("n_samples"), py::arg("seed"));

  m.def("exact_probabilities", &exact_probabilities, py::arg("state"), py::arg("basis"));
  m.def("noisy_probabilities", &noisy_probabilities, py::arg("state"), py::arg("basis"),
        py::arg("noise"));
  m.def("sample_measurement", &sample_measurement, py::arg("state"), py::arg("basis"),
        py::arg("shots"), py::arg("noise"), py::arg("seed"));
  m.def("build_calibration", &build_calibration, py::arg("noise"), py::arg("n_qubits"),
        py::arg("shots_per_basis_state"), py::arg("seed"));
  m.def("exact_calibration", &exact_calibration, py::arg("noise"), py::arg("n_qubits"));
  m.def("frequencies", &frequencies, py::arg("counts"));
  m.def("mitigate",
        py::overload_cast<const std::vector<double>&, const CalibrationMatrix&>(&mitigate),
        py::arg("p_raw"), py::arg("calibration"));
  m.def("mitigate", py::overload_cast<const CountsTable&, const CalibrationMatrix&>(&mitigate),
        py::arg("counts"), py::arg("calibration"));
  m.def("tomography_1q", &tomography_1q, py::arg("setting_probs"));
  m.def("tomography_2q", &tomography_2q, py::arg("setting_probs"));
  m.def("bbm_outcome_probabilities", &bbm_outcome_probabilities, py::arg("global_state"));
  m.def("bell_measure_and_postselect", &bell_measure_and_postselect, py::arg("global_state"),
        py::arg("shots"), py::arg("noise"), py::arg("seed"));

  // ------------------------------------------------------------ sweep ----
  py::enum_<Mode>(m, "Mode")
      .value("Theory", Mode::Theory)
      .value("IdealSim", Mode::IdealSim)
      .value("NoisySim", Mode::NoisySim);
  py::enum_<Preparation>(m, "Preparation")
      .value("Computational", Preparation::Computational)
      .value("Hadamard", Preparation::Hadamard);
  py::enum_<PRule>(m, "PRule")
      .value("EqualQ", PRule::EqualQ)
      .value("OneMinusQ", PRule::OneMinusQ)
      .value("Explicit", PRule::Explicit);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("q_values", &SweepConfig::q_values)
      .def_readwrite("preparation", &SweepConfig::preparation)
      .def_readwrite("p_rule", &SweepConfig::p_rule)
      .def_readwrite("explicit_p", &SweepConfig::explicit_p)
      .def_readwrite("shots", &SweepConfig::shots)
      .def_readwrite("eps01", &SweepConfig::eps01)
      .def_readwrite("eps10", &SweepConfig::eps10)
      .def_readwrite("seed", &SweepConfig::seed)
      .def_readwrite("modes", &SweepConfig::modes)
      .def_readwrite("threads", &SweepConfig::threads);

  py::class_<FigureRow>(m, "FigureRow")
      .def_readonly("q", &FigureRow::q)
      .def_readonly("quantity", &FigureRow::quantity)
      .def_readonly("mode", &FigureRow::mode)
      .def_readonly("value", &FigureRow::value)
      .def_readonly("std_error", &FigureRow::std_error)
      .def_readonly("flags", &FigureRow::flags)
      .def("__repr__", [](const FigureRow& r) {
        return "<FigureRow q=" + format_g12(r.q) + " " + r.quantity + "/" + r.mode + "=" +
               format_g12(r.value) + ">";
      });

  py::class_<VerifySuiteResult>(m, "VerifySuiteResult")
      .def_readonly("suite", &VerifySuiteResult::suite)
      .def_readonly("passed", &VerifySuiteResult::passed)
      .def_readonly("max_deviation", &VerifySuiteResult::max_deviation)
      .def_readonly("tolerance", &VerifySuiteResult::tolerance)
      .def_readonly("worst_seed", &VerifySuiteResult::worst_seed)
      .def_readonly("detail", &VerifySuiteResult::detail);

  m.def("default_q_grid", &default_q_grid, py::arg("steps") = kDefaultQSteps,
        py::arg("q_min") = 0.0, py::arg("q_max") = 1.0);
  m.def("prepare_pair", &prepare_pair, py::arg("prep"), py::arg("p"));
  m.def("run_fig1", &run_fig1, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_fig2", &run_fig2, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_verify", &run_verify, py::arg("suite"), py::arg("trials") = 1000,
        py::arg("seed") = kDefaultSeed, py::call_guard<py::gil_scoped_release>());

  m.attr("DEFAULT_SHOTS") = kDefaultShots;
  m.attr("DEFAULT_SEED") = kDefaultSeed;
  m.attr("DEFAULT_EPS01") = kDefaultEps01;
  m.attr("DEFAULT_EPS10") = kDefaultEps10;
  m.attr("SHOT_FLOOR") = kShotFloor;
}
