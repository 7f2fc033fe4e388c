#include "specseg/clustering.hpp"

#include <algorithm>
#include <limits>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "specseg/error.hpp"
#include "specseg/rng.hpp"

namespace specseg {

// ---------------------------------------------------------------------------
// Segmentation

std::vector<std::pair<std::size_t, std::size_t>> Segmentation::ranges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t b : boundaries) {
    out.emplace_back(start, b);
    start = b + 1;
  }
  out.emplace_back(start, sentence_count == 0 ? 0 : sentence_count - 1);
  return out;
}

std::vector<std::size_t> Segmentation::labels() const {
  std::vector<std::size_t> out(sentence_count, 0);
  std::size_t seg = 0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < sentence_count; ++i) {
    out[i] = seg;
    if (next < boundaries.size() && boundaries[next] == i) {
      ++seg;
      ++next;
    }
  }
  return out;
}

void Segmentation::validate() const {
  if (sentence_count == 0) throw Error(ErrorCode::InvalidArgument, "segmentation covers no sentences");
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i] + 1 >= sentence_count || (i > 0 && boundaries[i] <= boundaries[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "boundaries must be strictly increasing and below m - 1");
    }
  }
}

Segmentation Segmentation::from_ranges(const std::vector<std::pair<std::size_t, std::size_t>>& ranges) {
  if (ranges.empty()) throw Error(ErrorCode::InvalidArgument, "no segments");
  Segmentation s;
  std::size_t expected = 0;
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    const auto [start, end] = ranges[i];
    if (start != expected || end < start) {
      throw Error(ErrorCode::InvalidArgument, "segment " + std::to_string(i) + " [" + std::to_string(start) + ", " +
                                                  std::to_string(end) + "] is not contiguous with the previous one");
    }
    if (i + 1 < ranges.size()) s.boundaries.push_back(end);
    expected = end + 1;
  }
  s.sentence_count = expected;
  return s;
}

// ---------------------------------------------------------------------------
// KMeans

namespace {

double squared_distance(const Eigen::MatrixXd& points, Eigen::Index i, const Eigen::MatrixXd& centroids,
                        Eigen::Index c) {
  return (points.row(i) - centroids.row(c)).squaredNorm();
}

Eigen::MatrixXd cluster_means(const Eigen::MatrixXd& points, std::span<const std::size_t> labels,
                              const Eigen::MatrixXd& previous) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(previous.rows(), previous.cols());
  std::vector<std::size_t> counts(static_cast<std::size_t>(previous.rows()), 0);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const std::size_t c = labels[static_cast<std::size_t>(i)];
    sums.row(static_cast<Eigen::Index>(c)) += points.row(i);
    ++counts[c];
  }
  for (Eigen::Index c = 0; c < sums.rows(); ++c) {
    const std::size_t count = counts[static_cast<std::size_t>(c)];
    if (count == 0) {
      sums.row(c) = previous.row(c);
    } else {
      sums.row(c) /= static_cast<double>(count);
    }
  }
  return sums;
}

Eigen::MatrixXd kmeans_plus_plus(const Eigen::MatrixXd& points, std::size_t k, Rng& rng) {
  const auto n = static_cast<std::size_t>(points.rows());
  Eigen::MatrixXd centroids(static_cast<Eigen::Index>(k), points.cols());
  std::size_t first = static_cast<std::size_t>(rng.below(n));
  centroids.row(0) = points.row(static_cast<Eigen::Index>(first));

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d2[i] = squared_distance(points, static_cast<Eigen::Index>(i), centroids, 0);
  }
  for (std::size_t c = 1; c < k; ++c) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double running = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        running += d2[i];
        if (running > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.below(n));
    }
    centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(pick));
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(points, static_cast<Eigen::Index>(i), centroids,
                                               static_cast<Eigen::Index>(c)));
    }
  }
  return centroids;
}

// Relabels clusters in order of their smallest member.
std::vector<std::size_t> canonical_labels(std::span<const std::size_t> labels, std::size_t k) {
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> mapping(k, unset);
  std::size_t next = 0;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (mapping[labels[i]] == unset) mapping[labels[i]] = next++;
    out[i] = mapping[labels[i]];
  }
  return out;
}

// Single-point transfers (Hartigan) from a Lloyd fixed point: moves a point
// whenever the exact change in objective is negative. Lloyd alone can stop at
// configurations where such a move still helps.
void refine_by_transfers(const Eigen::MatrixXd& points, std::vector<std::size_t>& labels, std::size_t k) {
  const auto n = static_cast<std::size_t>(points.rows());
  Eigen::MatrixXd means = cluster_means(points, labels, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), points.cols()));
  std::vector<double> sizes(k, 0.0);
  for (std::size_t label : labels) sizes[label] += 1.0;

  for (std::size_t pass = 0; pass < 100 * n; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const std::size_t from = labels[i];
      if (sizes[from] < 2.0) continue;
      const double removal = sizes[from] / (sizes[from] - 1.0) * squared_distance(points, row, means, static_cast<Eigen::Index>(from));
      std::size_t to = from;
      double best_add = removal;
      for (std::size_t c = 0; c < k; ++c) {
        if (c == from) continue;
        const double add = sizes[c] / (sizes[c] + 1.0) * squared_distance(points, row, means, static_cast<Eigen::Index>(c));
        if (add < best_add) {
          best_add = add;
          to = c;
        }
      }
      if (to == from || removal - best_add <= 1e-12 * (1.0 + removal)) continue;
      const auto f = static_cast<Eigen::Index>(from);
      const auto t = static_cast<Eigen::Index>(to);
      means.row(f) = (means.row(f) * sizes[from] - points.row(row)) / (sizes[from] - 1.0);
      means.row(t) = (means.row(t) * sizes[to] + points.row(row)) / (sizes[to] + 1.0);
      sizes[from] -= 1.0;
      sizes[to] += 1.0;
      labels[i] = to;
      moved = true;
    }
    if (!moved) break;
  }
}

}  // namespace

double kmeans_objective(const Eigen::MatrixXd& points, std::span<const std::size_t> labels, std::size_t k) {
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), points.cols());
  means = cluster_means(points, labels, means);
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    total += squared_distance(points, i, means, static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)]));
  }
  return total;
}

LloydRun lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids, std::size_t max_iterations) {
  const auto n = static_cast<std::size_t>(points.rows());
  const auto k = static_cast<std::size_t>(centroids.rows());
  constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();

  LloydRun run;
  run.labels.assign(n, unassigned);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      std::size_t best = run.labels[i];
      double best_d = best == unassigned ? std::numeric_limits<double>::infinity()
                                         : squared_distance(points, row, centroids, static_cast<Eigen::Index>(best));
      for (std::size_t c = 0; c < k; ++c) {
        const double d = squared_distance(points, row, centroids, static_cast<Eigen::Index>(c));
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (best != run.labels[i]) {
        run.labels[i] = best;
        changed = true;
      }
    }

    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t label : run.labels) ++sizes[label];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t far = unassigned;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[run.labels[i]] < 2) continue;
        const double d = squared_distance(points, static_cast<Eigen::Index>(i), centroids,
                                          static_cast<Eigen::Index>(run.labels[i]));
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far == unassigned) break;  // fewer points than clusters
      --sizes[run.labels[far]];
      run.labels[far] = c;
      sizes[c] = 1;
      centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(far));
      changed = true;
    }

    centroids = cluster_means(points, run.labels, centroids);
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      objective += squared_distance(points, static_cast<Eigen::Index>(i), centroids,
                                    static_cast<Eigen::Index>(run.labels[i]));
    }
    run.objective_history.push_back(objective);
    if (!changed) break;
  }
  run.centroids = std::move(centroids);
  return run;
}

WordClustering kmeans(const Eigen::MatrixXd& points, std::size_t k, const KMeansOptions& options) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (k > n) throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds " + std::to_string(n) + " points");

  Rng rng(options.seed);
  WordClustering best;
  best.objective = std::numeric_limits<double>::infinity();
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    LloydRun run = lloyd(points, kmeans_plus_plus(points, k, rng), options.max_iterations);
    refine_by_transfers(points, run.labels, k);
    const double objective = kmeans_objective(points, run.labels, k);
    if (objective < best.objective) {
      best.objective = objective;
      best.labels = std::move(run.labels);
    }
  }
  best.k = k;
  best.labels = canonical_labels(best.labels, k);
  return best;
}

// ---------------------------------------------------------------------------
// Constrained agglomerative segmentation

AgglomerativeResult constrained_agglomerative(const Eigen::MatrixXd& points, std::size_t k,
                                              const std::vector<bool>& degenerate) {
  const auto m = static_cast<std::size_t>(points.rows());
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (k > m) throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds " + std::to_string(m) + " sentences");
  if (!degenerate.empty() && degenerate.size() != m) {
    throw Error(ErrorCode::DimensionError, "degenerate flags do not match the number of sentences");
  }

  // Unit rows; unusable rows borrow from their nearest usable neighbour.
  Eigen::MatrixXd unit = points;
  std::vector<bool> usable(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const double nrm = points.row(row).norm();
    usable[i] = nrm >= 1e-12 && (degenerate.empty() || !degenerate[i]);
    if (usable[i]) unit.row(row) /= nrm;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (usable[i]) continue;
    unit.row(static_cast<Eigen::Index>(i)).setZero();
    for (std::size_t dist = 1; dist < m; ++dist) {
      if (i >= dist && usable[i - dist]) {
        unit.row(static_cast<Eigen::Index>(i)) = unit.row(static_cast<Eigen::Index>(i - dist));
        break;
      }
      if (i + dist < m && usable[i + dist]) {
        unit.row(static_cast<Eigen::Index>(i)) = unit.row(static_cast<Eigen::Index>(i + dist));
        break;
      }
    }
  }

  // With unit rows the mean pairwise cosine between clusters A and B is
  // (sum_A . sum_B) / (|A| |B|). Clusters are keyed by their first sentence.
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  Eigen::MatrixXd sums = unit;
  std::vector<std::size_t> size(m, 1), next(m, none), prev(m, none), version(m, 0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    next[i] = i + 1;
    prev[i + 1] = i;
  }
  auto linkage = [&](std::size_t a, std::size_t b) {
    return 1.0 - sums.row(static_cast<Eigen::Index>(a)).dot(sums.row(static_cast<Eigen::Index>(b))) /
                     (static_cast<double>(size[a]) * static_cast<double>(size[b]));
  };

  // Candidate merge of a cluster with its right neighbour; stale once either
  // side has changed since it was pushed.
  struct Candidate {
    double distance;
    std::size_t left;
    std::size_t left_version;
    std::size_t right_version;
    bool operator>(const Candidate& o) const {
      return distance != o.distance ? distance > o.distance : left > o.left;
    }
  };
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> heap;
  auto push = [&](std::size_t left) {
    const std::size_t right = next[left];
    heap.push({linkage(left, right), left, version[left], version[right]});
  };
  for (std::size_t i = 0; i + 1 < m; ++i) push(i);

  AgglomerativeResult result;
  result.merges.reserve(m - k);
  for (std::size_t clusters = m; clusters > k;) {
    const Candidate c = heap.top();
    heap.pop();
    const std::size_t right = next[c.left];
    if (right == none || version[c.left] != c.left_version || version[right] != c.right_version) continue;

    result.merges.push_back({c.left, right, c.distance});
    sums.row(static_cast<Eigen::Index>(c.left)) += sums.row(static_cast<Eigen::Index>(right));
    size[c.left] += size[right];
    ++version[c.left];
    ++version[right];
    next[c.left] = next[right];
    if (next[right] != none) prev[next[right]] = c.left;
    --clusters;
    if (next[c.left] != none) push(c.left);
    if (prev[c.left] != none) push(prev[c.left]);
  }

  result.segmentation.sentence_count = m;
  for (std::size_t start = 0; next[start] != none; start = next[start]) {
    result.segmentation.boundaries.push_back(start + size[start] - 1);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Topics

TopicSet topics_from_labels(const WordClustering& clustering, std::span<const double> scores,
                            const Vocabulary& vocab) {
  if (clustering.labels.size() != vocab.size() || scores.size() != vocab.size()) {
    throw Error(ErrorCode::DimensionError, "labels, scores and vocabulary differ in length");
  }
  std::size_t k = clustering.k;
  for (std::size_t label : clustering.labels) k = std::max(k, label + 1);

  TopicSet set;
  set.topics.resize(k);
  for (std::size_t j = 0; j < vocab.size(); ++j) {
    set.topics[clustering.labels[j]].push_back({vocab.words[j], j, scores[j]});
  }
  for (auto& topic : set.topics) {
    std::sort(topic.begin(), topic.end(), [](const TopicWord& a, const TopicWord& b) {
      return a.score != b.score ? a.score > b.score : a.column < b.column;
    });
  }
  return set;
}

}  // namespace specseg
