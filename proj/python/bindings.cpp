#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "patc/config.hpp"
#include "patc/forward.hpp"
#include "patc/funkmink.hpp"
#include "patc/io.hpp"
#include "patc/metrics.hpp"
#include "patc/noise.hpp"
#include "patc/phantom.hpp"
#include "patc/range.hpp"
#include "patc/recon.hpp"

namespace py = pybind11;
using namespace patc;

namespace {

py::array_t<double> detector_array(const DetectorData& d) {
    const auto& g = d.grid;
    py::array_t<double> a({g.sphere.n_polar, g.sphere.n_az, g.n_t});
    std::copy(d.values.begin(), d.values.end(), a.mutable_data());
    return a;
}

py::array_t<double> volume_array(const VolumeGrid& v) {
    py::array_t<double> a({v.n, v.n, v.n});
    std::copy(v.values.begin(), v.values.end(), a.mutable_data());
    return a;
}

} // namespace

PYBIND11_MODULE(_patc, m) {
    m.doc() = "simulation and reconstruction for spherical arrays of circular integrating detectors";

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("r_det", &RunConfig::r_det)
        .def_readwrite("n_polar", &RunConfig::n_polar)
        .def_readwrite("n_az", &RunConfig::n_az)
        .def_readwrite("n_t", &RunConfig::n_t)
        .def_readwrite("t_max", &RunConfig::t_max)
        .def_readwrite("polar_min", &RunConfig::polar_min)
        .def_readwrite("n_circle", &RunConfig::n_circle)
        .def_readwrite("k_weight", &RunConfig::k_weight)
        .def_readwrite("s_max", &RunConfig::s_max)
        .def_readwrite("n_omega", &RunConfig::n_omega)
        .def_readwrite("n_s", &RunConfig::n_s)
        .def_readwrite("x_max", &RunConfig::x_max)
        .def_readwrite("n_plane", &RunConfig::n_plane)
        .def_readwrite("vol_n", &RunConfig::vol_n)
        .def_readwrite("half_width", &RunConfig::half_width)
        .def_readwrite("noise_level", &RunConfig::noise_level)
        .def_readwrite("rng_seed", &RunConfig::rng_seed)
        .def_readwrite("threads", &RunConfig::threads)
        .def("set", &RunConfig::set, py::arg("key"), py::arg("value"))
        .def("validate", &RunConfig::validate)
        .def("to_key_values", &RunConfig::to_key_values);

    py::class_<PhantomSpec>(m, "PhantomSpec")
        .def_static("from_json_text", &PhantomSpec::from_json_text)
        .def_static("from_json_file", &PhantomSpec::from_json_file)
        .def("to_json_text", &PhantomSpec::to_json_text)
        .def("validate", &PhantomSpec::validate, py::arg("r_det") = 1.0)
        .def_readwrite("symmetrize", &PhantomSpec::symmetrize)
        .def("__len__", [](const PhantomSpec& s) { return s.components.size(); });

    py::class_<DetectorData>(m, "DetectorData")
        .def_property_readonly("n_polar", [](const DetectorData& d) { return d.grid.sphere.n_polar; })
        .def_property_readonly("n_az", [](const DetectorData& d) { return d.grid.sphere.n_az; })
        .def_property_readonly("n_t", [](const DetectorData& d) { return d.grid.n_t; })
        .def_property_readonly("t_max", [](const DetectorData& d) { return d.grid.t_max; })
        .def_property_readonly("r_det", [](const DetectorData& d) { return d.grid.sphere.r_det; })
        .def_property_readonly("polar_min", [](const DetectorData& d) { return d.grid.sphere.polar_min; })
        .def_property_readonly("kind", [](const DetectorData& d) { return static_cast<int>(d.kind); })
        .def_property_readonly("values", &detector_array);

    py::class_<VolumeGrid>(m, "VolumeGrid")
        .def_property_readonly("n", [](const VolumeGrid& v) { return v.n; })
        .def_property_readonly("half_width", [](const VolumeGrid& v) { return v.half_width; })
        .def_property_readonly("values", &volume_array);

    m.def("eval_phantom",
          [](const PhantomSpec& s, double x, double y, double z) {
              return eval_phantom(s, Vec3{x, y, z});
          },
          py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("z"));

    m.def("spherical_radon_exact",
          [](const PhantomSpec& s, double x, double y, double z, double t) {
              return spherical_radon_exact(s, Vec3{x, y, z}, t);
          },
          py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("z"), py::arg("t"));

    m.def("simulate",
          [](const PhantomSpec& spec, const RunConfig& cfg) {
              cfg.validate();
              spec.validate(cfg.r_det);
              return detector_signal(spec, cfg.make_grid(), cfg.forward_options());
          },
          py::arg("spec"), py::arg("config"), py::call_guard<py::gil_scoped_release>());

    m.def("add_noise", &add_uniform_noise, py::arg("data"), py::arg("level"), py::arg("seed"));

    m.def("reconstruct",
          [](const DetectorData& P, const RunConfig& cfg) {
              cfg.validate();
              PipelineResult r = reconstruct_pipeline(P, cfg.pipeline_params());
              return py::make_tuple(std::move(r.volume),
                                    py::dict(py::arg("chart_dropped") = r.diagnostics.chart_dropped,
                                             py::arg("t_out_of_range") = r.diagnostics.t_out_of_range));
          },
          py::arg("data"), py::arg("config"));

    m.def("range_report",
          [](const DetectorData& data, int l_max, int n_zeros) {
              RangeReport rep = range_report(data, l_max, n_zeros);
              py::list moments;
              for (const MomentEntry& e : rep.moments)
                  moments.append(py::make_tuple(e.l, e.m, e.zero_index, e.lambda, e.residual));
              return py::dict(py::arg("evenness_residual") = rep.evenness_residual,
                              py::arg("zero_integral_residual") = rep.zero_integral_residual,
                              py::arg("moments") = moments,
                              py::arg("max_residual") = rep.max_residual());
          },
          py::arg("data"), py::arg("l_max") = 4, py::arg("n_zeros") = 5);

    m.def("volume_metrics",
          [](const VolumeGrid& vol, const PhantomSpec& spec, double r_det) {
              VolumeMetrics mm = volume_metrics(vol, spec, r_det);
              py::list balls;
              for (const BallMetrics& b : mm.balls)
                  balls.append(py::dict(py::arg("center_value") = b.center_value,
                                        py::arg("plateau_mean") = b.plateau_mean,
                                        py::arg("plateau_voxels") = b.plateau_voxels));
              return py::dict(py::arg("rel_l2_upper_half") = mm.rel_l2_upper_half,
                              py::arg("max_abs_error") = mm.max_abs_error,
                              py::arg("balls") = balls);
          },
          py::arg("volume"), py::arg("spec"), py::arg("r_det") = 1.0);

    m.def("ground_truth",
          [](const PhantomSpec& spec, int n, double half_width) {
              return rasterize_phantom(spec, n, half_width);
          },
          py::arg("spec"), py::arg("n"), py::arg("half_width") = 1.0);

    m.def("read_detector", &read_detector, py::arg("path"));
    m.def("write_detector", &write_detector, py::arg("path"), py::arg("data"));
    m.def("read_volume", &read_volume, py::arg("path"));
    m.def("write_volume", &write_volume, py::arg("path"), py::arg("volume"));
}
