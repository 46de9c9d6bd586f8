// Batch front end: tn_index --config run.json [--mode m] [--grav g] [--route r]
//                           [--out dir] [--tol x] [--threads n]
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tnindex/config.hpp"
#include "tnindex/errors.hpp"

namespace cli = tnindex::cli;

namespace {

int report_error(const std::string& kind, const std::string& message)
{
   const int code = cli::exit_code_for(kind);
   std::cerr << cli::error_json(kind, message, code);
   return code;
}

}  // namespace

int main(int argc, char** argv)
{
   CLI::App app{"Index-theorem verification runs on Taub-NUT space"};
   std::string config_path, mode, grav, route, out;
   std::optional<double> tol;
   std::optional<int> threads;
   app.add_option("--config", config_path, "JSON run configuration");
   app.add_option("--mode", mode, "index | eta | geometry-check | pontryagin | convergence");
   app.add_option("--grav", grav, "lemma | numeric");
   app.add_option("--route", route, "mode_sum | poisson | bernoulli | all");
   app.add_option("--out", out, "output directory");
   app.add_option("--tol", tol, "assertion tolerance of the mode");
   app.add_option("--threads", threads, "worker threads (default: TN_INDEX_THREADS, else 1)");

   try {
      app.parse(argc, argv);
   } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
   } catch (const CLI::ParseError& e) {
      return report_error("parse", e.what());
   }

   try {
      cli::RunConfig cfg;
      if (!config_path.empty()) cfg = cli::load_config(config_path);
      if (!mode.empty()) cfg.mode = cli::parse_mode(mode);
      if (!grav.empty()) cfg.grav = tnindex::index::parse_grav(grav);
      if (!route.empty()) cfg.routes = cli::parse_routes(route);
      if (!out.empty()) cfg.out_dir = out;
      if (tol) cfg.tol = *tol;
      if (threads) cfg.threads = *threads;
      if (config_path.empty() && mode.empty()) {
         throw tnindex::ValidationError("give --config or --mode");
      }

      const cli::RunResult res = cli::run(cfg);
      for (const auto& f : res.files) std::cout << f << '\n';
      std::cout << res.summary << '\n';
      if (!res.passed) {
         std::string msg;
         for (const auto& f : res.failures) msg += (msg.empty() ? "" : "; ") + f;
         return report_error("assertion", msg);
      }
      return 0;
   } catch (const tnindex::Error& e) {
      return report_error(e.kind(), e.what());
   } catch (const std::exception& e) {
      return report_error("internal", e.what());
   }
}
