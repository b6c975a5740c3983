#include "growthlab/product_engine.hpp"

#include <cmath>
#include <mutex>
#include <thread>

namespace growthlab {

namespace {

void check_specs(const ElementSet& a, const ElementSet& b) {
  if (a.spec() && b.spec() && !a.spec()->equal_specs(*b.spec()))
    throw SpecMismatchError("sets over different specs: " + a.spec()->key() +
                            " vs " + b.spec()->key());
}

unsigned pick_threads(const EngineLimits& lim, uint64_t pairs) {
  if (lim.threads == 1 || pairs < (1u << 18)) return 1;
  unsigned hw = std::thread::hardware_concurrency();
  unsigned t = lim.threads ? lim.threads : (hw ? hw : 1);
  return std::max(1u, t);
}

}  // namespace

ElementSet product(const ElementSet& a, const ElementSet& b,
                   const EngineLimits& lim) {
  check_specs(a, b);
  auto spec = a.spec() ? a.spec() : b.spec();
  ElementSet out(spec);
  if (a.empty() || b.empty()) return out;

  const uint64_t pairs = a.size() * b.size();
  const unsigned threads = pick_threads(lim, pairs);

  if (threads == 1) {
    a.for_each_mat([&](const Mat& x) {
      b.for_each_mat([&](const Mat& y) {
        out.insert_mat(spec->mat_mul(x, y));
      });
      if (out.size() > lim.memory_cap)
        throw MemoryCapError("product exceeded memory cap of " +
                             std::to_string(lim.memory_cap) + " elements");
    });
    return out;
  }

  // block-parallel over the left operand; each block builds a local set
  // (a subset of the full result, so the cap applies to it too) and the
  // blocks merge by union, which is order-independent
  std::vector<Mat> left;
  left.reserve(a.size());
  a.for_each_mat([&](const Mat& m) { left.push_back(m); });

  std::vector<std::unordered_set<Mat, MatHash>> locals(threads);
  std::vector<std::thread> pool;
  std::exception_ptr fail;
  std::mutex fail_mtx;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        auto& local = locals[t];
        for (size_t i = t; i < left.size(); i += threads) {
          b.for_each_mat([&](const Mat& y) {
            local.insert(spec->mat_mul(left[i], y));
          });
          if (local.size() > lim.memory_cap)
            throw MemoryCapError("product exceeded memory cap of " +
                                 std::to_string(lim.memory_cap) + " elements");
        }
      } catch (...) {
        std::lock_guard<std::mutex> lk(fail_mtx);
        if (!fail) fail = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (fail) std::rethrow_exception(fail);

  for (auto& local : locals) {
    for (auto it = local.begin(); it != local.end();) {
      auto node = local.extract(it++);
      out.insert_mat(std::move(node.value()));
    }
    if (out.size() > lim.memory_cap)
      throw MemoryCapError("product exceeded memory cap of " +
                           std::to_string(lim.memory_cap) + " elements");
  }
  return out;
}

ElementSet inverse_set(const ElementSet& a) {
  ElementSet out(a.spec());
  a.for_each_mat([&](const Mat& m) { out.insert_mat(a.spec()->mat_inv(m)); });
  return out;
}

ElementSet symmetrize(const ElementSet& a, bool include_identity) {
  ElementSet out(a.spec());
  a.for_each_mat([&](const Mat& m) {
    out.insert_mat(m);
    out.insert_mat(a.spec()->mat_inv(m));
  });
  if (include_identity && a.spec()) out.insert_mat(a.spec()->identity());
  return out;
}

bool is_symmetric(const ElementSet& a) {
  bool sym = true;
  a.for_each_mat([&](const Mat& m) {
    if (!a.contains_mat(a.spec()->mat_inv(m))) sym = false;
  });
  return sym;
}

double GrowthReport::epsilon_hat() const {
  if (size_a <= 1) return 0.0;
  return std::log(double(size_a3)) / std::log(double(size_a)) - 1.0;
}

GrowthReport growth_report(const ElementSet& a, const EngineLimits& lim) {
  if (a.empty()) throw PreconditionError("growth report of an empty set");
  GrowthReport rep;
  rep.spec_key = a.spec()->key();
  rep.size_a = a.size();
  ElementSet a2 = product(a, a, lim);
  rep.size_a2 = a2.size();
  ElementSet a3 = product(a2, a, lim);
  rep.size_a3 = a3.size();
  rep.is_symmetric = is_symmetric(a);
  try {
    rep.a3_is_group = (rep.size_a3 == group_order(*a.spec()));
  } catch (const UnsupportedSpecError&) {
    rep.a3_is_group = std::nullopt;
  }
  return rep;
}

ElementSet bfs_closure(const ElementSet& gens, uint64_t max_size) {
  auto spec = gens.spec();
  ElementSet visited(spec);
  if (!spec) return visited;
  visited.insert_mat(spec->identity());
  std::vector<Mat> frontier{spec->identity()};
  std::vector<Mat> next;
  while (!frontier.empty()) {
    next.clear();
    for (const Mat& g : frontier) {
      bool stop = false;
      gens.for_each_mat([&](const Mat& s) {
        if (stop) return;
        Mat prod = spec->mat_mul(g, s);
        if (!visited.contains_mat(prod)) {
          next.push_back(prod);
          visited.insert_mat(std::move(prod));
          if (visited.size() > max_size) stop = true;
        }
      });
      if (stop)
        throw MemoryCapError("closure exceeded cap of " +
                             std::to_string(max_size) + " elements");
    }
    frontier.swap(next);
  }
  return visited;
}

BfsResult bfs_layers(const ElementSet& s, uint64_t cap) {
  if (!s.spec()) throw PreconditionError("bfs_layers on an empty-spec set");
  if (!is_symmetric(s)) throw NotSymmetricError("generating set is not symmetric");
  const uint64_t order = group_order(*s.spec());
  if (order > cap)
    throw TooLargeError("group order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(cap));
  auto spec = s.spec();

  BfsResult res;
  ElementSet visited(spec);
  visited.insert_mat(spec->identity());
  std::vector<Mat> frontier{spec->identity()};
  std::vector<Mat> next;
  while (!frontier.empty()) {
    next.clear();
    for (const Mat& g : frontier)
      s.for_each_mat([&](const Mat& gen) {
        Mat prod = spec->mat_mul(g, gen);
        if (!visited.contains_mat(prod)) {
          next.push_back(prod);
          visited.insert_mat(std::move(prod));
        }
      });
    if (next.empty()) break;
    res.ball_sizes.push_back(visited.size());
    if (visited.size() == order) break;
    frontier.swap(next);
  }
  res.closure_size = visited.size();
  if (res.closure_size == order)
    res.diameter = static_cast<uint32_t>(res.ball_sizes.size());
  return res;
}

bool generates(const ElementSet& a, uint64_t cap) {
  if (!a.spec()) throw PreconditionError("generation test on an empty-spec set");
  const uint64_t order = group_order(*a.spec());
  if (order > cap)
    throw TooLargeError("group order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(cap));
  ElementSet s = symmetrize(a, /*include_identity=*/true);
  ElementSet closure = bfs_closure(s, order);
  return closure.size() == order;
}

bool gowers_regime_check(const ElementSet& a, double delta,
                         const EngineLimits& lim) {
  if (!a.spec()) throw PreconditionError("empty-spec set");
  uint64_t order;
  try {
    order = group_order(*a.spec());
  } catch (const UnsupportedSpecError& e) {
    throw PreconditionError(std::string("group order not computable: ") + e.what());
  }
  const long double threshold = std::pow((long double)(order), 1.0L - (long double)delta);
  if (!((long double)a.size() > threshold))
    throw PreconditionError("|A| = " + std::to_string(a.size()) +
                            " is not above |G|^{1-delta}");
  ElementSet a2 = product(a, a, lim);
  ElementSet a3 = product(a2, a, lim);
  return a3.size() == order;
}

}  // namespace growthlab
