#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schur/document.hpp"
#include "schur/parallel.hpp"

namespace {

using schur::ErrorKind;
using schur::Json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::parse_error: return 2;
    case ErrorKind::unsupported_size: return 3;
    case ErrorKind::solver_nonconvergence:
    case ErrorKind::extraction_failure: return 4;
    case ErrorKind::io_error: return 5;
  }
  return 2;
}

const schur::EquivalenceClassSet& classes_for(std::size_t n, const std::string& cache_dir) {
  if (cache_dir.empty()) return schur::enumerate_classes(n);
  return *schur::load_or_enumerate_classes(n, cache_dir).set;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur multiplier norms of sign matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  unsigned threads = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", threads, "Worker threads (default: SCHURNORM_THREADS or all cores)");

  // schur-norm
  auto* sn = app.add_subcommand("schur-norm", "Schur norm of a matrix file or circulant");
  std::string sn_file;
  std::vector<double> sn_circ;
  bool sn_certs = false, sn_force = false;
  double sn_tol = 1e-8;
  sn->add_option("file", sn_file, "Matrix file (rows of numbers, + and - allowed)");
  sn->add_option("--circulant", sn_circ, "Circulant top row, comma separated")->delimiter(',');
  sn->add_flag("--certificates", sn_certs, "Include primal and dual certificates");
  sn->add_flag("--force-sdp", sn_force, "Skip the circulant/PSD/rank-one fast paths");
  sn->add_option("--tol", sn_tol, "Target width of the certified bracket");

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "Schur spectrum of n x n sign matrices");
  std::size_t sp_n = 0;
  double sp_tol = schur::kDefaultDedupTol;
  std::string sp_cache;
  sp->add_option("-n", sp_n, "Order (1..7)")->required();
  sp->add_option("--dedup-tol", sp_tol, "Merge values closer than this");
  sp->add_option("--cache-dir", sp_cache, "Directory for the class cache");

  // rn
  auto* rn = app.add_subcommand("rn", "Largest Schur norm r_n (exact for n <= 7, bounds above)");
  std::size_t rn_n = 0, rn_restarts = 0;
  std::uint64_t rn_seed = schur::RnBoundsOptions{}.seed;
  std::string rn_cache;
  rn->add_option("-n", rn_n, "Order")->required();
  rn->add_option("--cache-dir", rn_cache, "Directory for the class cache");
  rn->add_option("--restarts", rn_restarts, "Search restarts for the lower bound when n > 7 (default 10 n)");
  rn->add_option("--seed", rn_seed, "Search seed when n > 7");

  // rcn
  auto* rc = app.add_subcommand("rcn", "Largest Schur norm over circulant sign matrices");
  std::size_t rc_n = 0;
  rc->add_option("-n", rc_n, "Order (1..24)")->required();

  // cn
  auto* cn = app.add_subcommand("cn", "Complex analogue c_n = sqrt(n) with Fourier verification");
  std::size_t cn_n = 0;
  cn->add_option("-n", cn_n, "Order")->required();

  // enumerate
  auto* en = app.add_subcommand("enumerate", "Enumerate equivalence classes and write the cache");
  std::size_t en_n = 0;
  std::string en_cache = "schurnorm-cache";
  en->add_option("-n", en_n, "Order (1..7)")->required();
  en->add_option("--cache-dir", en_cache, "Cache directory");

  // hadamard
  auto* hd = app.add_subcommand("hadamard", "Construct a Hadamard matrix");
  std::size_t hd_order = 0;
  hd->add_option("--order", hd_order, "Order")->required();

  // almost-hadamard
  auto* ah = app.add_subcommand("almost-hadamard", "Largest entrywise 1-norm of an orthogonal matrix");
  std::size_t ah_n = 0, ah_restarts = 0;
  std::uint64_t ah_seed = 20240611;
  bool ah_exact = false, ah_search = false;
  std::string ah_cache;
  ah->add_option("-n", ah_n, "Order")->required();
  auto* ex = ah->add_flag("--exact", ah_exact, "Exact maximum over classes (n <= 7)");
  auto* se = ah->add_flag("--search", ah_search, "Randomized local search");
  ex->excludes(se);
  ah->add_option("--restarts", ah_restarts, "Search restarts (default 200 n)");
  ah->add_option("--seed", ah_seed, "Search seed");
  ah->add_option("--cache-dir", ah_cache, "Directory for the class cache");

  // verify
  auto* vf = app.add_subcommand("verify", "Re-check a JSON result document");
  std::string vf_file;
  vf->add_option("file", vf_file, "Document produced with --format json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (threads > 0) schur::set_thread_count(threads);
  const auto start = std::chrono::steady_clock::now();

  try {
    Json doc;
    if (sn->parsed()) {
      schur::DenseMatrix a;
      if (!sn_circ.empty()) {
        if (!sn_file.empty()) schur::fail(ErrorKind::invalid_input, "give either a file or --circulant, not both");
        a = schur::circulant(sn_circ);
      } else {
        if (sn_file.empty()) schur::fail(ErrorKind::invalid_input, "missing matrix file (or --circulant)");
        a = schur::read_matrix_file(sn_file);
      }
      schur::require(a.is_square(), ErrorKind::invalid_input,
                     "matrix is " + std::to_string(a.rows()) + " x " + std::to_string(a.cols()) + ", not square");
      schur::SchurNormOptions opt;
      opt.tol = sn_tol;
      opt.fast_paths = !sn_force;
      const auto r = schur::schur_norm(a, opt);
      doc = schur::schur_norm_document(a, r, sn_certs, sn_tol);
    } else if (sp->parsed()) {
      if (sp_n >= 1 && sp_n <= schur::kMaxEnumerationOrder) classes_for(sp_n, sp_cache);
      doc = schur::spectrum_document(schur::schur_spectrum(sp_n, sp_tol));
    } else if (rn->parsed()) {
      if (rn_n >= 1 && rn_n <= schur::kMaxEnumerationOrder) {
        classes_for(rn_n, rn_cache);
        doc = schur::extremal_document("rn", schur::r_n(rn_n));
      } else {
        schur::RnBoundsOptions opt;
        opt.restarts = rn_restarts;
        opt.seed = rn_seed;
        doc = schur::rn_bounds_document(schur::r_n_bounds(rn_n, opt), opt);
      }
    } else if (rc->parsed()) {
      doc = schur::extremal_document("rcn", schur::rc_n(rc_n));
    } else if (cn->parsed()) {
      const auto r = schur::c_n(cn_n);
      doc["command"] = "cn";
      doc["n"] = r.n;
      doc["value"] = r.value;
      doc["exact_form"] = schur::optional_tag(schur::match_closed_form(r.value));
      doc["verification_residual"] = r.verification_residual;
    } else if (en->parsed()) {
      doc = schur::enumerate_document(schur::load_or_enumerate_classes(en_n, en_cache));
    } else if (hd->parsed()) {
      const auto reg = schur::hadamard_registry();
      const auto h = schur::construct_hadamard(hd_order);
      doc = schur::hadamard_document(h, reg.at(hd_order).describe());
    } else if (ah->parsed()) {
      if (ah_exact == ah_search) schur::fail(ErrorKind::invalid_input, "choose exactly one of --exact or --search");
      schur::OneNormResult r;
      if (ah_exact) {
        if (ah_n >= 1 && ah_n <= schur::kMaxEnumerationOrder) classes_for(ah_n, ah_cache);
        r = schur::max_one_norm_exact(ah_n);
      } else {
        r = schur::max_one_norm_search(ah_n, ah_restarts ? ah_restarts : schur::default_restarts(ah_n), ah_seed);
      }
      doc = schur::one_norm_document(r);
    } else if (vf->parsed()) {
      Json in;
      try {
        in = Json::parse(schur::read_text_file(vf_file));
      } catch (const Json::parse_error& e) {
        schur::fail(ErrorKind::parse_error, vf_file + ": " + e.what());
      }
      const auto report = schur::verify_document(in);
      doc["command"] = "verify";
      doc["document"] = in.value("command", "");
      doc["ok"] = report.ok();
      Json checks = Json::array();
      for (const auto& [name, ok] : report.checks) checks.push_back({{"check", name}, {"pass", ok}});
      doc["checks"] = std::move(checks);
      std::cout << schur::render(doc, format);
      return report.ok() ? 0 : 1;
    }
    doc["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << schur::render(doc, format);
    return 0;
  } catch (const schur::NonConvergence& e) {
    std::cerr << "error: " << schur::to_string(e.kind()) << ": " << e.what() << " (bracket ["
              << schur::format_number(e.lower()) << ", " << schur::format_number(e.upper()) << "])\n";
    return exit_code(e.kind());
  } catch (const schur::Error& e) {
    std::cerr << "error: " << schur::to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error: parse-error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: io-error: " << e.what() << "\n";
    return 5;
  }
}
