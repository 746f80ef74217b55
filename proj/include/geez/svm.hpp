/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/error.hpp"
#include "geez/features.hpp"
#include "geez/rng.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace geez {

enum class KernelKind { linear, polynomial };

/// Polynomial kernels evaluate (gamma * <x, y> + coef0)^degree.
struct KernelSpec
{
	KernelKind kind = KernelKind::linear;
	int degree = 2;
	double gamma = 1.0;
	double coef0 = 1.0;

	friend bool operator==(KernelSpec const&, KernelSpec const&) = default;
};

template <typename DerivedA, typename DerivedB>
double
kernel_eval(KernelSpec const& k, Eigen::MatrixBase<DerivedA> const& x, Eigen::MatrixBase<DerivedB> const& y)
{
	if (x.size() != y.size()) {
		throw DimensionError(
			"kernel operands differ in dimension: " + std::to_string(x.size()) + " vs " + std::to_string(y.size())
		);
	}
	double const dot = x.reshaped().dot(y.reshaped());
	if (k.kind == KernelKind::linear) {
		return dot;
	}
	return std::pow(k.gamma * dot + k.coef0, k.degree);
}

struct TrainParams
{
	double c = 1.0;
	double tol = 1e-3;
	int max_passes = 200; ///< iteration cap is max_passes * n_samples
	std::uint64_t seed = 0;
};

struct LabeledSample
{
	Eigen::VectorXd features;
	int label = 0;
};

/// Dual solution of one binary soft-margin problem.
struct BinaryDual
{
	Eigen::VectorXd alpha;
	double bias = 0.0;
	long long iterations = 0;
	double max_violation = 0.0;
};

/**
 * SMO on min 1/2 a'Qa - e'a, 0 <= a <= C, y'a = 0 with Q_ij = y_i y_j K_ij.
 * Working pairs are the maximal violator plus the second-order best partner;
 * ties go to the earlier index of `order`, a seeded permutation of samples.
 * Stops when the KKT gap is <= tol or after max_passes * n iterations.
 */
BinaryDual solve_binary(
	Eigen::MatrixXd const& gram, Eigen::VectorXd const& y, TrainParams const& params,
	std::vector<int> const& order
);

/// Per-class decision function. Linear models keep only `weights`;
/// polynomial ones keep sparse (support index, alpha_i * y_i) pairs.
struct ClassDecision
{
	double bias = 0.0;
	Eigen::VectorXd weights;
	std::vector<int> support_index;
	std::vector<double> support_coef;
};

struct SvmModel
{
	int n_classes = 0;
	int dim = 0;
	KernelSpec kernel;
	std::uint64_t seed = 0;
	FeatureConfig feature_config;
	FeatureLayout layout;
	std::string class_map; ///< path or name of the class table, informational
	Eigen::VectorXd mean;  ///< standardization, x' = (x - mean) / scale
	Eigen::VectorXd scale;
	Eigen::MatrixXd support; ///< standardized support vectors, one per row (polynomial only)
	std::vector<ClassDecision> classes;

	void check() const;
};

struct ModelInfo
{
	FeatureConfig feature_config;
	FeatureLayout layout;
	std::string class_map;
};

/**
 * One-vs-rest training. Class ids must be dense 0..n-1, each present at
 * least once, with n >= 2. Features are standardized with the training
 * mean and population standard deviation (dimensions with zero spread are
 * left unscaled). A polynomial kernel with gamma <= 0 uses gamma = 1/D.
 */
SvmModel train(
	std::vector<LabeledSample> const& samples, KernelSpec kernel, TrainParams const& params,
	ModelInfo info = {}
);

Eigen::VectorXd standardize(SvmModel const& m, Eigen::VectorXd const& x);
Eigen::VectorXd decision_values(SvmModel const& m, Eigen::VectorXd const& x);

/// Argmax of the decision values; ties go to the lowest class id.
int argmax_lowest(Eigen::VectorXd const& values);
int predict(SvmModel const& m, Eigen::VectorXd const& x);

struct Evaluation
{
	double accuracy = 0.0;
	double misclassification_rate = 0.0;
	long long correct = 0;
	long long total = 0;
	Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> confusion; ///< (true, predicted)
};

Evaluation evaluate(SvmModel const& m, std::vector<LabeledSample> const& test);

} // namespace geez
