#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "qjl/bounds.hpp"
#include "qjl/circuits.hpp"
#include "qjl/design.hpp"
#include "qjl/experiments.hpp"
#include "qjl/jl.hpp"
#include "qjl/pir.hpp"
#include "qjl/sampling.hpp"
#include "qjl/stats.hpp"
#include "qjl/types.hpp"

namespace py = pybind11;
using namespace qjl;

namespace {

using carray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

CVector to_cvector(const carray& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d complex array");
    const auto* p = a.data();
    return CVector(p, p + a.shape(0));
}

Matrix to_matrix(const carray& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d complex array");
    Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), m.data());
    return m;
}

carray from_cvector(const CVector& v) {
    carray out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

carray from_matrix(const Matrix& m) {
    carray out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    std::copy(m.data(), m.data() + m.rows() * m.cols(), out.mutable_data());
    return out;
}

py::object json_to_py(const nlohmann::json& j) {
    namespace nl = nlohmann;
    switch (j.type()) {
        case nl::json::value_t::null:
            return py::none();
        case nl::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nl::json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case nl::json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case nl::json::value_t::number_float:
            return py::float_(j.get<double>());
        case nl::json::value_t::string:
            return py::str(j.get<std::string>());
        case nl::json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(json_to_py(e));
            return out;
        }
        case nl::json::value_t::object: {
            py::dict out;
            for (const auto& item : j.items()) out[py::str(item.key())] = json_to_py(item.value());
            return out;
        }
        default:
            return py::none();
    }
}

nlohmann::json py_to_json(const py::handle& obj) {
    namespace nl = nlohmann;
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        nl::json out = nl::json::object();
        for (auto item : obj.cast<py::dict>())
            out[item.first.cast<std::string>()] = py_to_json(item.second);
        return out;
    }
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        nl::json out = nl::json::array();
        for (auto item : obj.cast<py::sequence>()) out.push_back(py_to_json(item));
        return out;
    }
    throw std::invalid_argument("unsupported config value type");
}

}  // namespace

PYBIND11_MODULE(_qjl, m) {
    m.doc() = "Block-projection dimensionality reduction on quantum state vectors: samplers, "
              "circuits, tail bounds and the membership-query protocol.";

    m.def("l2_norm", [](const carray& v) { return l2_norm(to_cvector(v)); });
    m.def("inner_product",
          [](const carray& u, const carray& w) { return inner_product(to_cvector(u), to_cvector(w)); },
          "Sesquilinear inner product, conjugate-linear in the first argument");
    m.def("block_project", [](const carray& v, std::size_t block, std::size_t d2) {
        const CVector x = to_cvector(v);
        return from_cvector(block_project(x, block, BlockStructure(x.size(), d2)));
    });
    m.def("l1_distance", [](const std::vector<double>& p, const std::vector<double>& q) {
        return l1_distance(p, q);
    });
    m.def("unitarity_defect", [](const carray& u) { return unitarity_defect(to_matrix(u)); });

    m.def("sample_gaussians", [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return sample_gaussians(n, rng);
    }, py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
    m.def("sample_haar_unit_vector", [](std::size_t d, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return from_cvector(sample_haar_unit_vector(d, rng).amplitudes());
    }, py::arg("d"), py::arg("seed"), py::arg("stream") = 0);
    m.def("sample_haar_unitary", [](std::size_t d, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return from_matrix(sample_haar_unitary(d, rng));
    }, py::arg("d"), py::arg("seed"), py::arg("stream") = 0);
    m.def("sample_chi_square_sum", [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return sample_chi_square_sum(n, rng);
    }, py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

    m.def("generate_local_random_circuit",
          [](std::size_t q, std::size_t s, std::uint64_t seed, std::uint64_t stream) {
              RngStream rng(seed, stream);
              return json_to_py(circuit_to_json(generate_local_random_circuit(q, s, rng)));
          },
          py::arg("q"), py::arg("s"), py::arg("seed"), py::arg("stream") = 0,
          "Returns the circuit in its JSON form");
    m.def("apply_circuit", [](const py::dict& circuit, const carray& v) {
        const GateCircuit c = circuit_from_json(py_to_json(circuit));
        return from_cvector(apply_circuit(c, StateVector(to_cvector(v))).amplitudes());
    });
    m.def("circuit_to_unitary", [](const py::dict& circuit) {
        return from_matrix(circuit_to_unitary(circuit_from_json(py_to_json(circuit))));
    });

    m.def("classical_jl", [](const carray& v, const carray& u, std::size_t d2) {
        const CVector x = to_cvector(v);
        return from_cvector(classical_jl(x, to_matrix(u), BlockStructure(x.size(), d2)));
    });
    m.def("block_probability_vector", [](const carray& v, const carray& u, std::size_t d2) {
        const StateVector x(to_cvector(v));
        const Matrix mu = to_matrix(u);
        return block_probability_vector(x, UnitaryApplier(mu), BlockStructure(x.dim(), d2));
    });
    m.def("quantum_jl_measure",
          [](const carray& v, const carray& u, std::size_t d2, std::uint64_t seed,
             std::uint64_t stream) {
              const StateVector x(to_cvector(v));
              const Matrix mu = to_matrix(u);
              RngStream rng(seed, stream);
              const JLOutcome o = quantum_jl_measure(x, UnitaryApplier(mu),
                                                     BlockStructure(x.dim(), d2), rng);
              return py::make_tuple(o.block_index, o.block_probability,
                                    from_cvector(o.collapsed_state.amplitudes()));
          },
          py::arg("v"), py::arg("u"), py::arg("d2"), py::arg("seed"), py::arg("stream") = 0);
    m.def("polarization_inner_product", [](const carray& u, const carray& w) {
        return polarization_inner_product(to_cvector(u), to_cvector(w));
    });

    m.def("chi_square_tail_bound", [](std::uint64_t n, double eps) {
        const ChiSquareTailBound b = chi_square_tail_bound(n, eps);
        return py::make_tuple(b.sharp, b.simplified ? py::object(py::float_(*b.simplified))
                                                    : py::object(py::none()));
    });
    m.def("haar_projection_tail_bound", &haar_projection_tail_bound);
    m.def("design_projection_tail_bound", &design_projection_tail_bound);
    m.def("moment_bound_f", &moment_bound_f);
    m.def("moment_bound_g", &moment_bound_g);
    m.def("compute_design_params",
          [](std::uint64_t d1, std::uint64_t d2, double eps, double lambda0, double s_base) {
              const DesignParams p = compute_design_params(d1, d2, eps, lambda0, s_base);
              py::dict out;
              out["d1"] = p.d1;
              out["d2"] = p.d2;
              out["eps"] = p.eps;
              out["t"] = p.t;
              out["m"] = p.m;
              out["lambda_target_log"] = p.lambda_target_log;
              out["iterations_k"] = p.iterations_k;
              out["k_upper_bound"] = p.k_upper_bound;
              out["k_bound_satisfied"] = p.k_bound_satisfied;
              out["log_s_bound"] = p.log_s_bound;
              return out;
          },
          py::arg("d1"), py::arg("d2"), py::arg("eps"), py::arg("lambda0"), py::arg("s_base") = 2.0);

    m.def("estimate_tpe_lambda", [](const std::vector<carray>& unitaries, std::size_t t) {
        std::vector<Matrix> us;
        us.reserve(unitaries.size());
        for (const carray& u : unitaries) us.push_back(to_matrix(u));
        return estimate_tpe_lambda(FiniteDesign::from_unitaries(std::move(us)), t);
    });

    m.def("run_protocol",
          [](const std::vector<std::size_t>& s, std::size_t x, const py::dict& params,
             std::uint64_t seed) {
              PirParams p;
              p.m = params["m"].cast<std::size_t>();
              p.n = params["n"].cast<std::size_t>();
              p.d2 = params["d2"].cast<std::size_t>();
              p.c_rep = params.contains("c_rep") ? params["c_rep"].cast<std::size_t>() : 16;
              p.eps = params.contains("eps") ? params["eps"].cast<double>()
                                             : 0.01 / std::pow(static_cast<double>(p.n), 3.0);
              if (params.contains("circuit_size")) {
                  p.kind = PirParams::UnitaryKind::circuit;
                  p.circuit_size = params["circuit_size"].cast<std::size_t>();
              }
              const ProtocolTranscript t = run_protocol(s, x, p, seed);
              return json_to_py(transcript_to_json(t, false));
          },
          py::arg("s"), py::arg("x"), py::arg("params"), py::arg("seed"));

    m.def("run_experiment",
          [](const py::dict& config) {
              const ExperimentConfig cfg = parse_config(py_to_json(config));
              const ExperimentResult res = run_experiment(cfg);
              return json_to_py(res.document);
          },
          "Runs one named experiment from a config dict and returns the result document");

    py::register_exception<ConfigError>(m, "ConfigError");
}
