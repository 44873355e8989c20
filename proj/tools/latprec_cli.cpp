// Command-line surface over the library: enumeration, codebook build and
// selection, optimization, GMD baseline, bound reports, reduction and the
// 4-D reproduction run.
//
// Exit codes: 0 success, 2 input error, 3 numerical/assertion failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "latprec/bounds.hpp"
#include "latprec/codebook.hpp"
#include "latprec/io.hpp"
#include "latprec/perfect.hpp"
#include "latprec/precoder.hpp"
#include "latprec/reduction.hpp"

namespace {

using nlohmann::json;

void write_json(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open " + path + " for writing");
  os << j.dump(2) << "\n";
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json result_to_json(const latprec::PrecoderResult& r) {
  return json{{"spec_version", latprec::kSpecVersion},
              {"f", matrix_to_json(r.f)},
              {"power", r.power},
              {"dmin2", r.dmin2},
              {"normalized_dmin2", r.normalized_dmin2},
              {"source_form", r.source_form},
              {"lower_bound", r.bounds.first},
              {"upper_bound", r.bounds.second}};
}

int run_enumerate(int dim, double trace_bound, const std::string& out) {
  using namespace latprec;
  Rat tb = rationalize(trace_bound, 1'000'000);
  auto recs = enumerate_perfect_forms(root_lattice_form(dim), tb);
  auto classes = isometry_classes(recs);
  json forms = json::array();
  for (const auto& rec : recs) {
    json jf = form_to_json(rec.form);
    jf["trace"] = to_double(rec.form.trace());
    jf["min_vector_pairs"] = rec.min_vectors.vectors.size();
    forms.push_back(jf);
  }
  json j{{"spec_version", kSpecVersion},
         {"dim", dim},
         {"trace_bound", trace_bound},
         {"forms", forms},
         {"isometry_classes", classes.size()}};
  write_json(out, j);
  std::cout << "enumerated " << recs.size() << " perfect forms in "
            << classes.size() << " isometry classes\n";
  return 0;
}

int run_optimize(const std::string& channel_path, const std::string& cb_path,
                 const std::string& out) {
  using namespace latprec;
  ChannelSpectrum s = parse_channel(read_json_file(channel_path));
  PrecoderResult res = [&] {
    if (!cb_path.empty()) return select_precoder(s, load_codebook(cb_path));
    // fresh full search: enumerate to the channel's trace bound, then
    // sweep unimodular spheres of each reduced class representative
    Rat tb = rationalize(gram_trace_bound(s), 1'000'000) + Rat(1, 1'000'000);
    auto classes = isometry_classes(enumerate_perfect_forms(root_lattice_form(s.dim()), tb));
    PrecoderResult best;
    bool first = true;
    for (size_t ci = 0; ci < classes.size(); ++ci) {
      QuadraticForm g_l = minkowski_reduce(classes[ci]).first;
      for (const auto& z : enumerate_unimodular_in_sphere(g_l, tb)) {
        QuadraticForm g_b = congruent_form(g_l, z);
        double p = objective(g_b, s);
        if (first || p < best.power - 1e-15) {
          best = build_precoder(g_b, s, "class" + std::to_string(ci));
          first = false;
        }
      }
    }
    if (first) throw NumericalError("optimize: empty candidate sweep");
    return best;
  }();
  write_json(out, result_to_json(res));
  std::cout << "power " << res.power << " dmin2 " << res.dmin2 << " source "
            << res.source_form << "\n";
  return 0;
}

int run_bounds(const std::string& channel_path) {
  using namespace latprec;
  ChannelSpectrum s = parse_channel(read_json_file(channel_path));
  const int n = s.dim();
  QuadraticForm g_l = n == 4 ? d4_form() : root_lattice_form(n);
  GeneratorMatrix l = generator_of(g_l);
  BoundCertificate c = certificate(l, s);
  std::cout << "lower_energy " << c.lower_energy << "\n"
            << "upper_energy " << c.upper_energy << "\n"
            << "gram_trace_ub " << c.gram_trace_ub << "\n"
            << "z_trace_ub " << c.z_trace_ub << "\n"
            << "ratio " << c.ratio << "\n";
  return 0;
}

int run_reduce(const std::string& gram_path, const std::string& out) {
  using namespace latprec;
  QuadraticForm g = parse_form(read_json_file(gram_path));
  auto [g_l, z] = minkowski_reduce(g);
  json jz = json::array();
  for (int i = 0; i < z.dim(); ++i)
    for (int j = 0; j < z.dim(); ++j) jz.push_back(z.at(i, j));
  json j = form_to_json(g_l);
  j["spec_version"] = kSpecVersion;
  j["dim"] = g.dim();
  j["z"] = jz;
  write_json(out, j);
  std::cout << "reduced form trace " << to_double(g_l.trace()) << "\n";
  return 0;
}

int run_repro() {
  auto rep = latprec::repro_4d();
  std::cout << "channel diag(1,0.95,0.94,0.93): winner " << rep.winner_a
            << " (A4 " << rep.obj_a_best_a4 << ", D4 " << rep.obj_a_best_d4
            << ", trace ub " << rep.gram_trace_ub_a << ")\n"
            << "channel diag(1,0.99,0.94,0.93): winner " << rep.winner_b
            << " (A4 " << rep.obj_b_best_a4 << ", D4 " << rep.obj_b_best_d4
            << ", trace ub " << rep.gram_trace_ub_b << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum-distance precoder toolkit"};
  app.require_subcommand(1);

  int dim = 2;
  double trace_bound = 0, max_ratio = 1.0;
  std::string out, channel_path, cb_path, gram_path;

  auto* cmd_enum = app.add_subcommand("enumerate", "enumerate perfect forms");
  cmd_enum->add_option("--dim", dim)->required()->check(CLI::Range(2, 7));
  cmd_enum->add_option("--trace-bound", trace_bound);
  cmd_enum->add_option("--out", out)->required();

  auto* cmd_cb = app.add_subcommand("codebook", "build an offline codebook");
  cmd_cb->add_option("--dim", dim)->required()->check(CLI::Range(2, 5));
  cmd_cb->add_option("--max-ratio", max_ratio)->required();
  cmd_cb->add_option("--out", out)->required();

  auto* cmd_opt = app.add_subcommand("optimize", "select the best precoder for a channel");
  cmd_opt->add_option("--channel", channel_path)->required();
  cmd_opt->add_option("--codebook", cb_path);
  cmd_opt->add_option("--out", out)->required();

  auto* cmd_gmd = app.add_subcommand("gmd", "geometric mean decomposition baseline");
  cmd_gmd->add_option("--channel", channel_path)->required();
  cmd_gmd->add_option("--out", out)->required();

  auto* cmd_bounds = app.add_subcommand("bounds", "print the bound certificate");
  cmd_bounds->add_option("--channel", channel_path)->required();

  auto* cmd_red = app.add_subcommand("reduce", "Minkowski-reduce a Gram matrix");
  cmd_red->add_option("--gram", gram_path)->required();
  cmd_red->add_option("--out", out)->required();

  auto* cmd_repro = app.add_subcommand("repro-4d", "4-D two-channel reproduction run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_enum)) {
      if (trace_bound <= 0) trace_bound = 3.0 * dim;
      return run_enumerate(dim, trace_bound, out);
    }
    if (app.got_subcommand(cmd_cb)) {
      latprec::save_codebook(latprec::build_codebook(dim, max_ratio), out);
      std::cout << "codebook written to " << out << "\n";
      return 0;
    }
    if (app.got_subcommand(cmd_opt)) return run_optimize(channel_path, cb_path, out);
    if (app.got_subcommand(cmd_gmd)) {
      latprec::ChannelSpectrum s =
          latprec::parse_channel(latprec::read_json_file(channel_path));
      latprec::GmdResult g = latprec::gmd_precoder(s);
      nlohmann::json j{{"spec_version", latprec::kSpecVersion},
                       {"w", matrix_to_json(g.w)},
                       {"f", matrix_to_json(g.f)},
                       {"r", matrix_to_json(g.r)}};
      write_json(out, j);
      std::cout << "gmd diagonal " << g.r(0, 0) << "\n";
      return 0;
    }
    if (app.got_subcommand(cmd_bounds)) return run_bounds(channel_path);
    if (app.got_subcommand(cmd_red)) return run_reduce(gram_path, out);
    if (app.got_subcommand(cmd_repro)) return run_repro();
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
