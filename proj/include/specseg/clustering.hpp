#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specseg/segmentation.hpp"
#include "specseg/text_prep.hpp"

namespace specseg {

struct KMeansOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  std::size_t max_iterations = 300;
};

// Cluster ids are numbered in order of each cluster's smallest member.
struct WordClustering {
  std::vector<std::size_t> labels;
  std::size_t k = 0;
  double objective = 0.0;
};

struct LloydRun {
  std::vector<std::size_t> labels;
  Eigen::MatrixXd centroids;
  std::vector<double> objective_history;  // after every assignment + update
};

// Within-cluster sum of squared deviations from the cluster means.
double kmeans_objective(const Eigen::MatrixXd& points, std::span<const std::size_t> labels, std::size_t k);

// Lloyd iterations from the given centroids. An empty cluster takes the point
// farthest from its centroid (among clusters with more than one member).
LloydRun lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids, std::size_t max_iterations);

// k-means++ seeding, best of options.restarts Lloyd runs each followed by
// single-point transfer refinement. Throws KTooLarge if
// k exceeds the number of points.
WordClustering kmeans(const Eigen::MatrixXd& points, std::size_t k, const KMeansOptions& options = {});

struct Merge {
  std::size_t left_start = 0;   // first sentence of the surviving cluster
  std::size_t right_start = 0;  // first sentence of the absorbed cluster
  double distance = 0.0;
};

struct AgglomerativeResult {
  Segmentation segmentation;
  std::vector<Merge> merges;
};

// Bottom-up merging of adjacent clusters under average-linkage cosine
// distance until k remain; ties go to the lowest left cluster. Rows flagged
// in `degenerate` (or with zero norm) borrow the embedding of the nearest
// usable row by index.
AgglomerativeResult constrained_agglomerative(const Eigen::MatrixXd& points, std::size_t k,
                                              const std::vector<bool>& degenerate = {});

struct TopicWord {
  std::string word;
  std::size_t column = 0;
  double score = 0.0;
};

struct TopicSet {
  std::vector<std::vector<TopicWord>> topics;
};

// Groups words by cluster and sorts each group by descending score, ties by
// column.
TopicSet topics_from_labels(const WordClustering& clustering, std::span<const double> scores,
                            const Vocabulary& vocab);

}  // namespace specseg
