// Serial versus OpenMP candidate search on scalable choice programs.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <string>

#include "setasp/gz.hpp"
#include "setasp/parser.hpp"
#include "setasp/solver.hpp"

#ifdef SETASP_HAVE_OPENMP
#include <omp.h>
#endif

using namespace setasp;

namespace {

// n independent choices plus a count over the chosen ones.
std::string choice_program(int n) {
  std::string text;
  for (int i = 1; i <= n; ++i) {
    text += "p(" + std::to_string(i) + ") :- not q(" + std::to_string(i) + ").\n";
    text += "q(" + std::to_string(i) + ") :- not p(" + std::to_string(i) + ").\n";
  }
  text += "big :- count{X : p(X)} >= " + std::to_string(n / 2) + ".\n";
  return text;
}

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial versus parallel stable-model search"};
  int min_n = 4, max_n = 7, reps = 3;
  app.add_option("--min", min_n, "Smallest number of choices");
  app.add_option("--max", max_n, "Largest number of choices");
  app.add_option("--reps", reps, "Repetitions per measurement (best is reported)");
  CLI11_PARSE(app, argc, argv);

  int threads = 1;
#ifdef SETASP_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);
  std::printf("%-6s %-8s %10s %12s %12s %8s %s\n", "n", "engine", "candidates", "serial[s]", "parallel[s]",
              "speedup", "same");
  for (int n = min_n; n <= max_n; ++n) {
    Theory th = parse_program(choice_program(n));
    DomainBounds b;
    b.min_int = 0;
    b.max_int = n;
    SolveOptions so, po;
    so.parallel = false;
    so.max_free_bits = po.max_free_bits = 2 * n + 2;
    StableModelReport sr, pr;
    double ts = best_of(reps, [&] { sr = find_stable_models(th, b, so); });
    double tp = best_of(reps, [&] { pr = find_stable_models(th, b, po); });
    bool same = sr.models.size() == pr.models.size();
    for (std::size_t i = 0; same && i < sr.models.size(); ++i) same = sr.models[i].atoms == pr.models[i].atoms;
    std::printf("%-6d %-8s %10zu %12.4f %12.4f %8.2f %s\n", n, "eq", sr.stats.candidates, ts, tp, ts / tp,
                same ? "yes" : "NO");

    GzOptions sg, pg;
    sg.parallel = false;
    sg.max_free_bits = pg.max_free_bits = 2 * n + 2;
    std::vector<std::vector<Atom>> gs, gp;
    double gts = best_of(reps, [&] { gs = gz_stable_models(th, b, sg); });
    double gtp = best_of(reps, [&] { gp = gz_stable_models(th, b, pg); });
    std::printf("%-6d %-8s %10s %12.4f %12.4f %8.2f %s\n", n, "gz", "-", gts, gtp, gts / gtp,
                gs == gp ? "yes" : "NO");
  }
  return 0;
}
