// Times one desk-profile training step (forward, loss, backward) and the
// eval-mode forward used by sweeps.

#include <chrono>
#include <cstdio>
#include <vector>

#include "vbind/model.hpp"

int main(int argc, char** argv) {
  using Clock = std::chrono::steady_clock;
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  const auto cfg = vbind::ModelConfig::desk();
  vbind::Params<float> w(cfg), g(cfg);
  vbind::init_params(w, 1);
  const std::size_t batch = 64, seq = 67;
  std::vector<int> full(batch * (seq + 1)), in(batch * seq);
  vbind::CounterRng rng(2);
  for (auto& t : full) t = static_cast<int>(rng.below(40));
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t t = 0; t < seq; ++t) in[b * seq + t] = full[b * (seq + 1) + t];
  vbind::Workspace<float> ws;
  vbind::ForwardOptions<float> opt;
  opt.mode = vbind::Mode::kTrain;
  std::vector<float> dl(batch * seq * 40);
  double tf = 0, tb = 0;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    vbind::forward<float>(w, in, batch, seq, opt, ws);
    vbind::lm_loss<float>(ws, full, dl);
    auto t1 = Clock::now();
    g.zero();
    vbind::backward<float>(w, ws, dl, g);
    auto t2 = Clock::now();
    tf += std::chrono::duration<double>(t1 - t0).count();
    tb += std::chrono::duration<double>(t2 - t1).count();
  }
  std::printf("train step: forward %.3fs backward %.3fs total %.3fs\n", tf / reps, tb / reps, (tf + tb) / reps);
  opt.mode = vbind::Mode::kEval;
  auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) vbind::forward<float>(w, in, batch, seq, opt, ws);
  std::printf("eval forward: %.3fs\n", std::chrono::duration<double>(Clock::now() - t0).count() / reps);
}
