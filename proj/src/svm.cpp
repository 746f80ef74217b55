/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/svm.hpp"
#include "geez/parallel.hpp"
#include "geez/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace geez {

namespace {

constexpr double tau = 1e-12;

} // namespace

BinaryDual
solve_binary(Eigen::MatrixXd const& gram, Eigen::VectorXd const& y, TrainParams const& params, std::vector<int> const& order)
{
	auto const n = static_cast<int>(y.size());
	double const c = params.c;
	BinaryDual out;
	out.alpha = Eigen::VectorXd::Zero(n);
	Eigen::VectorXd& alpha = out.alpha;
	Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);

	auto in_up = [&](int t) { return (y(t) > 0 && alpha(t) < c) || (y(t) < 0 && alpha(t) > 0); };
	auto in_low = [&](int t) { return (y(t) < 0 && alpha(t) < c) || (y(t) > 0 && alpha(t) > 0); };

	long long const max_iter = static_cast<long long>(std::max(1, params.max_passes)) * std::max(n, 1);
	for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
		int i = -1;
		double gmax = -std::numeric_limits<double>::infinity();
		for (int t : order) {
			if (in_up(t) && -y(t) * grad(t) > gmax) {
				gmax = -y(t) * grad(t);
				i = t;
			}
		}
		int j = -1;
		double gmin = std::numeric_limits<double>::infinity();
		double best = std::numeric_limits<double>::infinity();
		for (int t : order) {
			if (!in_low(t)) {
				continue;
			}
			double const v = -y(t) * grad(t);
			gmin = std::min(gmin, v);
			double const diff = gmax - v;
			if (i >= 0 && diff > 0) {
				double a = gram(i, i) + gram(t, t) - 2.0 * gram(i, t);
				if (a <= 0) {
					a = tau;
				}
				double const obj = -(diff * diff) / a;
				if (obj < best) {
					best = obj;
					j = t;
				}
			}
		}
		out.max_violation = (i < 0 || gmin == std::numeric_limits<double>::infinity()) ? 0.0 : gmax - gmin;
		if (i < 0 || j < 0 || out.max_violation <= params.tol) {
			break;
		}

		double const ai = alpha(i), aj = alpha(j);
		double const qij = y(i) * y(j) * gram(i, j);
		if (y(i) != y(j)) {
			double quad = gram(i, i) + gram(j, j) + 2.0 * qij;
			if (quad <= 0) {
				quad = tau;
			}
			double const delta = (-grad(i) - grad(j)) / quad;
			double const diff = ai - aj;
			alpha(i) += delta;
			alpha(j) += delta;
			if (diff > 0) {
				if (alpha(j) < 0) {
					alpha(j) = 0;
					alpha(i) = diff;
				}
			} else if (alpha(i) < 0) {
				alpha(i) = 0;
				alpha(j) = -diff;
			}
			if (diff > 0) {
				if (alpha(i) > c) {
					alpha(i) = c;
					alpha(j) = c - diff;
				}
			} else if (alpha(j) > c) {
				alpha(j) = c;
				alpha(i) = c + diff;
			}
		} else {
			double quad = gram(i, i) + gram(j, j) - 2.0 * qij;
			if (quad <= 0) {
				quad = tau;
			}
			double const delta = (grad(i) - grad(j)) / quad;
			double const sum = ai + aj;
			alpha(i) -= delta;
			alpha(j) += delta;
			if (sum > c) {
				if (alpha(i) > c) {
					alpha(i) = c;
					alpha(j) = sum - c;
				}
			} else if (alpha(j) < 0) {
				alpha(j) = 0;
				alpha(i) = sum;
			}
			if (sum > c) {
				if (alpha(j) > c) {
					alpha(j) = c;
					alpha(i) = sum - c;
				}
			} else if (alpha(i) < 0) {
				alpha(i) = 0;
				alpha(j) = sum;
			}
		}

		double const dai = alpha(i) - ai;
		double const daj = alpha(j) - aj;
		// grad_k += Q_ki * dai + Q_kj * daj
		grad.array() += y.array() * (gram.col(i).array() * (y(i) * dai) + gram.col(j).array() * (y(j) * daj));
	}

	// Bias from free vectors, else the midpoint of the feasible interval.
	double ub = std::numeric_limits<double>::infinity();
	double lb = -std::numeric_limits<double>::infinity();
	double sum_free = 0;
	int n_free = 0;
	for (int t = 0; t < n; ++t) {
		double const yg = y(t) * grad(t);
		if (alpha(t) >= c) {
			if (y(t) < 0) {
				ub = std::min(ub, yg);
			} else {
				lb = std::max(lb, yg);
			}
		} else if (alpha(t) <= 0) {
			if (y(t) > 0) {
				ub = std::min(ub, yg);
			} else {
				lb = std::max(lb, yg);
			}
		} else {
			++n_free;
			sum_free += yg;
		}
	}
	double rho = 0;
	if (n_free > 0) {
		rho = sum_free / n_free;
	} else if (std::isfinite(ub) && std::isfinite(lb)) {
		rho = (ub + lb) / 2;
	} else if (std::isfinite(ub)) {
		rho = ub;
	} else if (std::isfinite(lb)) {
		rho = lb;
	}
	out.bias = -rho;
	return out;
}

void
SvmModel::check() const
{
	if (n_classes < 2) {
		throw DimensionError("model needs at least two classes");
	}
	if (static_cast<int>(classes.size()) != n_classes) {
		throw DimensionError("model has decision data for " + std::to_string(classes.size()) + " of " +
		                     std::to_string(n_classes) + " classes");
	}
	if (mean.size() != dim || scale.size() != dim) {
		throw DimensionError("standardization size differs from model dimension");
	}
	if (!layout.empty() && feature_dimension(layout) != dim) {
		throw DimensionError("feature layout sums to " + std::to_string(feature_dimension(layout)) +
		                     ", model dimension is " + std::to_string(dim));
	}
	for (auto const& cd : classes) {
		if (kernel.kind == KernelKind::linear) {
			if (cd.weights.size() != dim) {
				throw DimensionError("weight length " + std::to_string(cd.weights.size()) +
				                     " differs from model dimension " + std::to_string(dim));
			}
		} else {
			if (cd.support_index.size() != cd.support_coef.size()) {
				throw DimensionError("support index/coefficient count mismatch");
			}
			for (int idx : cd.support_index) {
				if (idx < 0 || idx >= support.rows()) {
					throw DimensionError("support index out of range");
				}
			}
		}
	}
	if (kernel.kind == KernelKind::polynomial && support.rows() > 0 && support.cols() != dim) {
		throw DimensionError("support vector length differs from model dimension");
	}
}

SvmModel
train(std::vector<LabeledSample> const& samples, KernelSpec kernel, TrainParams const& params, ModelInfo info)
{
	if (samples.empty()) {
		throw TrainingError("empty training set");
	}
	if (!(params.c > 0) || !(params.tol > 0)) {
		throw TrainingError("C and tol must be positive");
	}
	auto const dim = static_cast<int>(samples.front().features.size());
	int max_label = -1;
	for (size_t i = 0; i < samples.size(); ++i) {
		if (samples[i].features.size() != dim) {
			throw TrainingError("sample " + std::to_string(i) + " has dimension " +
			                    std::to_string(samples[i].features.size()) + ", expected " + std::to_string(dim));
		}
		if (samples[i].label < 0) {
			throw TrainingError("negative class id in sample " + std::to_string(i));
		}
		max_label = std::max(max_label, samples[i].label);
	}
	if (dim < 1) {
		throw TrainingError("zero-dimensional features");
	}
	int const n_classes = max_label + 1;
	std::vector<int> per_class(static_cast<size_t>(n_classes), 0);
	for (auto const& s : samples) {
		++per_class[s.label];
	}
	for (int k = 0; k < n_classes; ++k) {
		if (per_class[k] == 0) {
			throw TrainingError("class " + std::to_string(k) + " has no samples");
		}
	}
	if (n_classes < 2) {
		throw TrainingError("training needs at least two classes");
	}
	if (kernel.kind == KernelKind::polynomial) {
		if (kernel.degree < 1) {
			throw TrainingError("polynomial degree must be >= 1");
		}
		if (!(kernel.gamma > 0)) {
			kernel.gamma = 1.0 / dim;
		}
	}

	auto const n = static_cast<int>(samples.size());
	Eigen::MatrixXd x(n, dim);
	for (int i = 0; i < n; ++i) {
		x.row(i) = samples[i].features.transpose();
	}

	SvmModel m;
	m.n_classes = n_classes;
	m.dim = dim;
	m.kernel = kernel;
	m.seed = params.seed;
	m.feature_config = info.feature_config;
	m.layout = std::move(info.layout);
	m.class_map = std::move(info.class_map);
	m.mean = x.colwise().mean().transpose();
	m.scale = ((x.rowwise() - m.mean.transpose()).array().square().colwise().mean()).sqrt().transpose();
	for (int d = 0; d < dim; ++d) {
		if (!(m.scale(d) > 0)) {
			m.scale(d) = 1.0;
		}
	}
	x = ((x.rowwise() - m.mean.transpose()).array().rowwise() / m.scale.transpose().array()).matrix();

	Eigen::MatrixXd gram = x * x.transpose();
	if (kernel.kind == KernelKind::polynomial) {
		gram = (kernel.gamma * gram.array() + kernel.coef0).pow(kernel.degree).matrix();
	}

	std::vector<int> const order = seeded_permutation(n, params.seed);
	std::vector<BinaryDual> duals(static_cast<size_t>(n_classes));
	parallel_for(n_classes, [&](int k) {
		Eigen::VectorXd y(n);
		for (int i = 0; i < n; ++i) {
			y(i) = samples[i].label == k ? 1.0 : -1.0;
		}
		duals[k] = solve_binary(gram, y, params, order);
	});

	m.classes.resize(static_cast<size_t>(n_classes));
	if (kernel.kind == KernelKind::linear) {
		for (int k = 0; k < n_classes; ++k) {
			Eigen::VectorXd coef(n);
			for (int i = 0; i < n; ++i) {
				coef(i) = duals[k].alpha(i) * (samples[i].label == k ? 1.0 : -1.0);
			}
			m.classes[k].weights = x.transpose() * coef;
			m.classes[k].bias = duals[k].bias;
		}
	} else {
		std::vector<int> pool_index(static_cast<size_t>(n), -1);
		int pool = 0;
		for (int i = 0; i < n; ++i) {
			for (int k = 0; k < n_classes; ++k) {
				if (duals[k].alpha(i) > 0) {
					pool_index[i] = pool++;
					break;
				}
			}
		}
		m.support.resize(pool, dim);
		for (int i = 0; i < n; ++i) {
			if (pool_index[i] >= 0) {
				m.support.row(pool_index[i]) = x.row(i);
			}
		}
		for (int k = 0; k < n_classes; ++k) {
			auto& cd = m.classes[k];
			cd.bias = duals[k].bias;
			for (int i = 0; i < n; ++i) {
				if (duals[k].alpha(i) > 0) {
					cd.support_index.push_back(pool_index[i]);
					cd.support_coef.push_back(duals[k].alpha(i) * (samples[i].label == k ? 1.0 : -1.0));
				}
			}
		}
	}
	return m;
}

Eigen::VectorXd
standardize(SvmModel const& m, Eigen::VectorXd const& x)
{
	if (x.size() != m.dim) {
		throw DimensionError("feature vector has dimension " + std::to_string(x.size()) + ", model expects " +
		                     std::to_string(m.dim));
	}
	return ((x - m.mean).array() / m.scale.array()).matrix();
}

Eigen::VectorXd
decision_values(SvmModel const& m, Eigen::VectorXd const& x)
{
	Eigen::VectorXd const z = standardize(m, x);
	Eigen::VectorXd out(m.n_classes);
	if (m.kernel.kind == KernelKind::linear) {
		for (int k = 0; k < m.n_classes; ++k) {
			out(k) = m.classes[k].weights.dot(z) + m.classes[k].bias;
		}
		return out;
	}
	Eigen::VectorXd kv(m.support.rows());
	for (Eigen::Index i = 0; i < m.support.rows(); ++i) {
		kv(i) = kernel_eval(m.kernel, m.support.row(i), z);
	}
	for (int k = 0; k < m.n_classes; ++k) {
		auto const& cd = m.classes[k];
		double f = 0;
		for (size_t s = 0; s < cd.support_index.size(); ++s) {
			f += cd.support_coef[s] * kv(cd.support_index[s]);
		}
		out(k) = f + cd.bias;
	}
	return out;
}

int
argmax_lowest(Eigen::VectorXd const& values)
{
	int best = 0;
	for (int k = 1; k < values.size(); ++k) {
		if (values(k) > values(best)) {
			best = k;
		}
	}
	return best;
}

int
predict(SvmModel const& m, Eigen::VectorXd const& x)
{
	return argmax_lowest(decision_values(m, x));
}

Evaluation
evaluate(SvmModel const& m, std::vector<LabeledSample> const& test)
{
	if (test.empty()) {
		throw DimensionError("empty evaluation set");
	}
	Evaluation ev;
	ev.confusion = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(m.n_classes, m.n_classes);
	std::vector<int> predicted(test.size());
	parallel_for(static_cast<int>(test.size()), [&](int i) { predicted[i] = predict(m, test[i].features); });
	for (size_t i = 0; i < test.size(); ++i) {
		int const truth = test[i].label;
		if (truth < 0 || truth >= m.n_classes) {
			throw DimensionError("test label " + std::to_string(truth) + " outside the model's classes");
		}
		++ev.confusion(truth, predicted[i]);
		ev.correct += truth == predicted[i] ? 1 : 0;
	}
	ev.total = static_cast<long long>(test.size());
	ev.accuracy = static_cast<double>(ev.correct) / static_cast<double>(ev.total);
	ev.misclassification_rate = 1.0 - ev.accuracy;
	return ev;
}

} // namespace geez
