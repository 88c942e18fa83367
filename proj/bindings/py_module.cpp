#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "otf/controller.hpp"
#include "otf/evolutionary.hpp"
#include "otf/exporters.hpp"
#include "otf/gradient_descent.hpp"
#include "otf/mcmc.hpp"
#include "otf/nelder_mead.hpp"
#include "otf/record.hpp"
#include "otf/repressilator.hpp"
#include "otf/summary.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const otf::json& j) {
  switch (j.type()) {
    case otf::json::value_t::null: return py::none();
    case otf::json::value_t::boolean: return py::bool_(j.get<bool>());
    case otf::json::value_t::number_integer: return py::int_(j.get<long long>());
    case otf::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case otf::json::value_t::number_float: return py::float_(j.get<double>());
    case otf::json::value_t::string: return py::str(j.get<std::string>());
    case otf::json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case otf::json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

otf::json py_to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    otf::json out = otf::json::object();
    for (auto item : obj.cast<py::dict>())
      out[item.first.cast<std::string>()] = py_to_json(item.second);
    return out;
  }
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    otf::json out = otf::json::array();
    for (auto item : obj.cast<py::sequence>()) out.push_back(py_to_json(item));
    return out;
  }
  throw std::invalid_argument("unsupported config value type");
}

otf::ObjectiveId objective_arg(const std::string& name) {
  auto id = otf::parse_objective(name);
  if (!id) throw std::invalid_argument("unknown objective: " + name);
  return *id;
}

otf::Algorithm algorithm_arg(const std::string& name) {
  auto algo = otf::parse_algorithm(name);
  if (!algo) throw std::invalid_argument("unknown algorithm: " + name);
  return *algo;
}

/// Evolutionary loop holder with the step(x, f, recomb, mut) calling
/// convention; the repressilator parameter fit is the problem.
class PyEa {
 public:
  PyEa(std::uint64_t seed, double mutation_std, double parent_fraction,
       std::size_t replacement_count)
      : rng_(seed), problem_(otf::repressilator_problem()) {
    cfg_.mutation_std = mutation_std;
    cfg_.parent_fraction = parent_fraction;
    cfg_.replacement_count = replacement_count;
  }

  std::pair<std::vector<otf::Point>, std::vector<double>> init(std::size_t pop_size) {
    cfg_.pop_size = pop_size;
    std::vector<otf::Individual> pop = otf::init_population(cfg_, problem_, rng_);
    return unpack(pop);
  }

  std::pair<std::vector<otf::Point>, std::vector<double>> step(
      const std::vector<otf::Point>& x, const std::vector<double>& f, int recomb,
      int mut) {
    if (x.size() != f.size())
      throw std::invalid_argument("step: x and f must have the same length");
    cfg_.pop_size = x.size();
    std::vector<otf::Individual> pop;
    pop.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) pop.push_back({x[i], f[i]});
    otf::ea_step(pop, recomb, mut, cfg_, problem_, rng_);
    return unpack(pop);
  }

 private:
  static std::pair<std::vector<otf::Point>, std::vector<double>> unpack(
      const std::vector<otf::Individual>& pop) {
    std::vector<otf::Point> x;
    std::vector<double> f;
    x.reserve(pop.size());
    f.reserve(pop.size());
    for (const otf::Individual& ind : pop) {
      x.push_back(ind.genome);
      f.push_back(ind.fitness);
    }
    return {std::move(x), std::move(f)};
  }

  otf::Rng rng_;
  otf::EaConfig cfg_;
  otf::EaProblem problem_;
};

}  // namespace

PYBIND11_MODULE(onthefly, m) {
  m.doc() = "optimization and sampling toolkit with on-the-fly parameter tuning";

  m.def("objectives", [] {
    std::vector<std::string> out;
    for (otf::ObjectiveId id :
         {otf::ObjectiveId::bohachevsky, otf::ObjectiveId::booth,
          otf::ObjectiveId::mh_density, otf::ObjectiveId::sa_density,
          otf::ObjectiveId::repressilator})
      out.emplace_back(otf::to_string(id));
    return out;
  });
  m.def("domain", [](const std::string& objective) {
    const otf::BoxDomain& box = otf::objective_domain(objective_arg(objective));
    return py::make_tuple(box.lower, box.upper);
  });

  m.def(
      "evaluate",
      [](const std::string& objective, const otf::Point& x) {
        return otf::evaluate(objective_arg(objective), x);
      },
      py::arg("objective"), py::arg("x"));
  m.def(
      "gradient",
      [](const std::string& objective, const otf::Point& x) {
        return otf::gradient(objective_arg(objective), x);
      },
      py::arg("objective"), py::arg("x"));
  m.def(
      "log_density",
      [](const std::string& objective, const otf::Point& x) {
        return otf::log_density(objective_arg(objective), x);
      },
      py::arg("objective"), py::arg("x"));
  m.def(
      "grid_eval",
      [](const std::string& objective, std::size_t resolution) {
        otf::Grid grid = otf::grid_eval(objective_arg(objective), resolution);
        return py::make_tuple(grid.resolution, grid.values);
      },
      py::arg("objective"), py::arg("resolution"));

  m.def("repressilator_fitness", [](const otf::Point& genome) {
    return otf::repressilator_fitness(otf::RepressilatorParams::from_point(genome));
  });
  m.def(
      "repressilator_trajectory",
      [](const otf::Point& params, const std::vector<double>& y0, double dt,
         double t_end) {
        if (y0.size() != 6) throw std::invalid_argument("y0 must have 6 entries");
        otf::State6 init;
        std::copy(y0.begin(), y0.end(), init.begin());
        otf::Trajectory traj = otf::repressilator_trajectory(
            otf::RepressilatorParams::from_point(params), init, dt, t_end);
        std::vector<std::vector<double>> states;
        states.reserve(traj.states.size());
        for (const otf::State6& s : traj.states)
          states.emplace_back(s.begin(), s.end());
        return py::make_tuple(traj.times, states);
      },
      py::arg("params"), py::arg("y0"), py::arg("dt"), py::arg("t_end"));

  m.def("sa_temperature", &otf::sa_temperature, py::arg("i"), py::arg("t0"),
        py::arg("cooling"));
  m.def("acceptance_probability", &otf::acceptance_probability,
        py::arg("log_p_current"), py::arg("log_p_candidate"),
        py::arg("temperature") = 1.0);
  m.def("derive_seed", &otf::derive_seed, py::arg("master_seed"), py::arg("repetition"));

  m.def(
      "summarize",
      [](const std::vector<double>& values) {
        otf::SummaryStats s = otf::summarize(values);
        return py::dict(py::arg("mean") = s.mean, py::arg("std") = s.stddev,
                        py::arg("n") = s.n, py::arg("min") = s.min,
                        py::arg("max") = s.max);
      },
      py::arg("values"));

  // EA exposed through the step(x, f, recomb, mut) calling convention
  py::class_<PyEa>(m, "EA")
      .def(py::init<std::uint64_t, double, double, std::size_t>(), py::arg("seed") = 0,
           py::arg("mutation_std") = 1.0, py::arg("parent_fraction") = 0.25,
           py::arg("replacement_count") = 0)
      .def("init", &PyEa::init, py::arg("pop_size") = 100)
      .def("step", &PyEa::step, py::arg("x"), py::arg("f"), py::arg("recomb"),
           py::arg("mut"));

  m.def(
      "run_experiment",
      [](const std::string& algorithm, const std::string& objective,
         const py::dict& config, std::uint64_t seed) {
        otf::RunRecord record = otf::run_experiment(
            algorithm_arg(algorithm), objective_arg(objective), py_to_json(config),
            seed);
        return json_to_py(otf::to_json(record));
      },
      py::arg("algorithm"), py::arg("objective"), py::arg("config") = py::dict(),
      py::arg("seed") = 0);

  m.def(
      "tune",
      [](const std::string& algorithm, const std::string& objective, std::size_t reps,
         std::uint64_t seed) {
        otf::Algorithm algo = algorithm_arg(algorithm);
        otf::TuneTable table = otf::tune(algo, objective_arg(objective), reps,
                                         otf::default_controller_state(algo), seed);
        py::list rows;
        for (const otf::TuneRow& row : table.rows) {
          rows.append(py::dict(
              py::arg("repetition") = row.repetition, py::arg("alpha") = row.alpha,
              py::arg("iterations") = row.iterations,
              py::arg("best_loss") = row.best_loss,
              py::arg("verdict") = otf::to_string(row.verdict),
              py::arg("evaluations") = row.evaluations));
        }
        return py::dict(py::arg("rows") = rows,
                        py::arg("chosen_repetition") = table.chosen_repetition,
                        py::arg("chosen_alpha") = table.chosen_alpha,
                        py::arg("chosen_iterations") = table.chosen_iterations);
      },
      py::arg("algorithm"), py::arg("objective"), py::arg("reps") = 20,
      py::arg("seed") = 0);
}
