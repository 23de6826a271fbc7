#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdlgbg/backends.hpp"
#include "mdlgbg/errors.hpp"
#include "mdlgbg/generation.hpp"
#include "mdlgbg/metrics.hpp"
#include "mdlgbg/pipeline.hpp"
#include "mdlgbg/preprocess.hpp"

namespace py = pybind11;
using namespace mdlgbg;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& x) {
    if (x.ndim() == 1) {
        Matrix m(static_cast<std::size_t>(x.shape(0)), 1);
        std::copy(x.data(), x.data() + x.size(), m.row(0).data());
        return m;
    }
    if (x.ndim() != 2) throw py::value_error("expected a 1-D or 2-D array");
    const auto n = static_cast<std::size_t>(x.shape(0)), d = static_cast<std::size_t>(x.shape(1));
    return Matrix(n, d, std::vector<double>(x.data(), x.data() + x.size()));
}

py::array_t<double> to_array(const Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

GranularBall whole_ball(const Matrix& m) {
    IndexList all(m.rows());
    std::iota(all.begin(), all.end(), 0);
    return make_ball(m, std::move(all));
}

py::dict verdict_dict(const ModelVerdict& v) {
    py::dict out;
    out["choice"] = model_name(v.choice);
    out["l1"] = v.l1;
    out["l2"] = v.l2_star;
    out["l3"] = v.l3_star;
    if (v.split) {
        out["cut"] = v.split->cut_position;
        out["left"] = v.split->left_indices;
        out["right"] = v.split->right_indices;
    }
    if (v.peel) {
        out["q"] = v.peel->q;
        out["core"] = v.peel->core_indices;
        out["residual"] = v.peel->residual_indices;
    }
    return out;
}

py::dict generate_py(const Array& x, std::optional<std::size_t> n_min, std::optional<std::size_t> k0,
                     bool normalize) {
    Dataset ds{to_matrix(x), std::nullopt};
    GenerationConfig cfg;
    cfg.n_min = n_min;
    cfg.k0 = k0;
    if (normalize) {
        ds = minmax_normalize(ds).first;
    } else {
        cfg.background_log_volume = background_log_volume(bounding_box(ds), false);
    }
    GenerationResult r;
    {
        py::gil_scoped_release release;
        r = generate(ds, cfg);
    }
    std::vector<IndexList> members;
    std::vector<double> radii;
    for (const auto& b : r.stable_balls) {
        members.push_back(b.members);
        radii.push_back(b.radius);
    }
    std::array<std::size_t, 3> counts{};
    for (const auto& rec : r.trace) ++counts[static_cast<std::size_t>(rec.verdict.choice)];
    py::dict out;
    out["members"] = members;
    out["centers"] = to_array(ball_centers(r.stable_balls));
    out["radii"] = radii;
    out["ownership"] = r.ownership;
    out["residual_pool"] = r.residual_pool;
    out["residual_background"] = r.residual_background;
    out["verdict_counts"] = py::dict(py::arg("M1") = counts[0], py::arg("M2") = counts[1], py::arg("M3") = counts[2]);
    out["n_min"] = r.n_min;
    out["k0"] = r.k0;
    return out;
}

std::vector<int> cluster_py(const Array& x, std::size_t k, const std::string& backend, std::uint64_t seed,
                            bool normalize, bool weight_by_size, std::optional<std::size_t> n_min,
                            std::optional<std::size_t> k0) {
    RunConfig cfg;
    cfg.backend = parse_backend(backend);
    cfg.k = k;
    cfg.seed = seed;
    cfg.normalize = normalize;
    cfg.weight_by_size = weight_by_size;
    cfg.n_min = n_min;
    cfg.k0 = k0;
    const Dataset ds{to_matrix(x), std::nullopt};
    py::gil_scoped_release release;
    return run_pipeline(ds, cfg).runs.front().labels;
}

std::string run_py(const std::string& input, const std::string& label_col, const std::string& backend,
                   std::optional<std::size_t> k, std::size_t runs, std::uint64_t seed, bool normalize,
                   std::optional<std::size_t> n_min, std::optional<std::size_t> k0, bool weight_by_size,
                   bool timings) {
    RunConfig cfg;
    cfg.input_path = input;
    cfg.label_column = LabelColumn::parse(label_col);
    cfg.backend = parse_backend(backend);
    cfg.k = k;
    cfg.runs = runs;
    cfg.seed = seed;
    cfg.normalize = normalize;
    cfg.n_min = n_min;
    cfg.k0 = k0;
    cfg.weight_by_size = weight_by_size;
    cfg.record_timings = timings;
    py::gil_scoped_release release;
    return report_to_json(run_pipeline(cfg));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "MDL granular-ball generation";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("normalize", [](const Array& x) {
        auto [ds, rec] = minmax_normalize(Dataset{to_matrix(x), std::nullopt});
        return py::make_tuple(to_array(ds.values), rec.min, rec.max);
    }, py::arg("x"));

    m.def("adaptive_n_min", &adaptive_n_min, py::arg("n"), py::arg("d"));
    m.def("initial_ball_count", &initial_ball_count, py::arg("n"));

    m.def("l1_length", [](const Array& x) {
        const auto m = to_matrix(x);
        return l1_length(whole_ball(m).stats, m.cols());
    }, py::arg("points"));
    m.def("partition_cost", &partition_cost, py::arg("m1"), py::arg("m2"));
    m.def("log_shell_volume", &log_shell_volume, py::arg("d"), py::arg("r_out"), py::arg("r_core"));
    m.def("select_model", [](const Array& x, std::size_t n_min) {
        const auto m = to_matrix(x);
        return verdict_dict(select_model(whole_ball(m), m, n_min));
    }, py::arg("points"), py::arg("n_min"));

    m.def("generate", &generate_py, py::arg("x"), py::arg("n_min") = py::none(), py::arg("k0") = py::none(),
          py::arg("normalize") = true);
    m.def("cluster", &cluster_py, py::arg("x"), py::arg("k"), py::arg("backend") = "ac", py::arg("seed") = 0,
          py::arg("normalize") = true, py::arg("weight_by_size") = false, py::arg("n_min") = py::none(),
          py::arg("k0") = py::none());
    m.def("run_json", &run_py, py::arg("input"), py::arg("label_col") = "last", py::arg("backend") = "ac",
          py::arg("k") = py::none(), py::arg("runs") = 1, py::arg("seed") = 0, py::arg("normalize") = true,
          py::arg("n_min") = py::none(), py::arg("k0") = py::none(), py::arg("weight_by_size") = false,
          py::arg("timings") = true);

    m.def("ari", [](const std::vector<int>& t, const std::vector<int>& p) { return ari(t, p); },
          py::arg("truth"), py::arg("pred"));
    m.def("acc", [](const std::vector<int>& t, const std::vector<int>& p) { return acc(t, p); },
          py::arg("truth"), py::arg("pred"));
    m.def("nmi", [](const std::vector<int>& t, const std::vector<int>& p) { return nmi(t, p); },
          py::arg("truth"), py::arg("pred"));
}
