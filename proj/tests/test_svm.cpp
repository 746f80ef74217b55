/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/codec.hpp"
#include "geez/error.hpp"
#include "geez/svm.hpp"

#include <doctest.h>

#include <sstream>

using namespace geez;

namespace {

LabeledSample
sample(std::initializer_list<double> v, int label)
{
	Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
	int i = 0;
	for (double d : v) {
		x(i++) = d;
	}
	return {x, label};
}

// Centers and noise live in the first `informative` dimensions; the rest is zero padding.
std::vector<LabeledSample>
blobs(int classes, int per_class, int dim, double sigma, std::uint64_t seed, int informative = 10)
{
	Rng rng(seed);
	std::vector<Eigen::VectorXd> centers;
	for (int k = 0; k < classes; ++k) {
		Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
		for (int d = 0; d < std::min(dim, informative); ++d) {
			c(d) = 3.0 * rng.normal();
		}
		centers.push_back(c);
	}
	std::vector<LabeledSample> out;
	for (int i = 0; i < per_class; ++i) {
		for (int k = 0; k < classes; ++k) {
			Eigen::VectorXd x = centers[k];
			for (int d = 0; d < std::min(dim, informative); ++d) {
				x(d) += sigma * rng.normal();
			}
			out.push_back({x, k});
		}
	}
	return out;
}

// Explicit kernel sum over the training set, using the model's own dual data.
double
explicit_sum(SvmModel const& m, int k, Eigen::VectorXd const& x)
{
	Eigen::VectorXd const z = ((x - m.mean).array() / m.scale.array()).matrix();
	auto const& cd = m.classes[k];
	double f = cd.bias;
	for (size_t s = 0; s < cd.support_index.size(); ++s) {
		Eigen::VectorXd const sv = m.support.row(cd.support_index[s]).transpose();
		f += cd.support_coef[s] * std::pow(m.kernel.gamma * sv.dot(z) + m.kernel.coef0, m.kernel.degree);
	}
	return f;
}

std::string
serialized(SvmModel const& m)
{
	std::ostringstream out;
	save_model(out, m);
	return out.str();
}

} // namespace

TEST_CASE("kernel evaluation")
{
	Eigen::Vector2d const x(1, 2), y(3, 4);
	KernelSpec lin;
	CHECK(kernel_eval(lin, x, y) == 11.0);
	KernelSpec poly{KernelKind::polynomial, 2, 1.0, 1.0};
	CHECK(kernel_eval(poly, x, y) == 144.0);
	CHECK(kernel_eval(poly, x, y) == kernel_eval(poly, y, x));
	CHECK(kernel_eval(lin, x, x) >= 0.0);
	CHECK_THROWS_AS(kernel_eval(lin, Eigen::VectorXd(x), Eigen::VectorXd::Ones(3)), DimensionError);
}

TEST_CASE("argmax ties go to the lowest class")
{
	CHECK(argmax_lowest(Eigen::Vector3d(0.2, 0.9, -1)) == 1);
	CHECK(argmax_lowest(Eigen::Vector2d(0.5, 0.5)) == 0);
}

TEST_CASE("training errors")
{
	CHECK_THROWS_AS(train({}, {}, {}), TrainingError);
	CHECK_THROWS_AS(train({sample({0}, 0), sample({1}, 0)}, {}, {}), TrainingError);
	CHECK_THROWS_AS(train({sample({0}, 0), sample({1, 2}, 1)}, {}, {}), TrainingError);
	CHECK_THROWS_AS(train({sample({0}, 0), sample({1}, 2)}, {}, {}), TrainingError);
	CHECK_THROWS_AS(train({sample({0}, 0), sample({1}, 1)}, {}, {0.0}), TrainingError);
}

TEST_CASE("separable one-dimensional set")
{
	std::vector<LabeledSample> const set = {sample({0}, 0), sample({1}, 0), sample({10}, 1), sample({11}, 1)};
	for (KernelKind kind : {KernelKind::linear, KernelKind::polynomial}) {
		SvmModel const m = train(set, {kind, 2, 1.0, 1.0}, {});
		Evaluation const ev = evaluate(m, set);
		CHECK(ev.accuracy == 1.0);
		CHECK(ev.confusion(0, 0) == 2);
		CHECK(ev.confusion(1, 1) == 2);
		for (auto const& s : set) {
			CHECK(predict(m, s.features) == s.label);
		}
	}

	std::vector<LabeledSample> doubled = set;
	doubled.insert(doubled.end(), set.begin(), set.end());
	SvmModel const a = train(set, {}, {10.0});
	SvmModel const b = train(doubled, {}, {10.0});
	for (double x : {-3.0, 0.5, 5.0, 5.5, 12.0}) {
		Eigen::VectorXd const v = Eigen::VectorXd::Constant(1, x);
		CHECK(decision_values(a, v)(0) == doctest::Approx(decision_values(b, v)(0)).epsilon(1e-2));
	}
}

TEST_CASE("linear decision values")
{
	SvmModel m;
	m.n_classes = 2;
	m.dim = 2;
	m.mean = Eigen::Vector2d::Zero();
	m.scale = Eigen::Vector2d::Ones();
	m.classes = {{0.0, Eigen::Vector2d(1, 0), {}, {}}, {0.25, Eigen::Vector2d::Zero(), {}, {}}};
	Eigen::VectorXd const dv = decision_values(m, Eigen::Vector2d(3, 7));
	CHECK(dv(0) == 3.0);
	CHECK(dv(1) == 0.25);
	CHECK_THROWS_AS(decision_values(m, Eigen::Vector3d(1, 2, 3)), DimensionError);
}

TEST_CASE("dual constraints hold for every subproblem")
{
	Rng rng(50);
	for (int trial = 0; trial < 10; ++trial) {
		int const n = rng.range(4, 60);
		Eigen::MatrixXd x(n, 3);
		Eigen::VectorXd y(n);
		for (int i = 0; i < n; ++i) {
			y(i) = i % 2 ? 1.0 : -1.0;
			for (int d = 0; d < 3; ++d) {
				x(i, d) = rng.normal() + (d == 0 ? y(i) : 0.0);
			}
		}
		TrainParams p;
		p.c = 0.1 + rng.uniform() * 5;
		Eigen::MatrixXd const gram = x * x.transpose();
		BinaryDual const dual = solve_binary(gram, y, p, seeded_permutation(n, trial));
		REQUIRE(dual.alpha.minCoeff() >= 0.0);
		REQUIRE(dual.alpha.maxCoeff() <= p.c);
		REQUIRE(std::abs(dual.alpha.dot(y)) <= p.tol);
		REQUIRE(dual.max_violation <= p.tol);
	}
}

TEST_CASE("primal weights agree with the dual kernel sum")
{
	auto const data = blobs(4, 15, 12, 1.5, 3);
	TrainParams const p{1.0, 1e-3, 200, 9};
	SvmModel const lin = train(data, {KernelKind::linear}, p);
	SvmModel const dual = train(data, {KernelKind::polynomial, 1, 1.0, 0.0}, p);
	Rng rng(4);
	for (int i = 0; i < 200; ++i) {
		Eigen::VectorXd x(12);
		for (int d = 0; d < 12; ++d) {
			x(d) = 3 * rng.normal();
		}
		Eigen::VectorXd const a = decision_values(lin, x);
		Eigen::VectorXd const b = decision_values(dual, x);
		for (int k = 0; k < 4; ++k) {
			REQUIRE(std::abs(a(k) - b(k)) <= 1e-9 * std::max(1.0, std::abs(a(k))));
			REQUIRE(std::abs(b(k) - explicit_sum(dual, k, x)) <= 1e-9 * std::max(1.0, std::abs(b(k))));
		}
	}
}

TEST_CASE("polynomial decision values match an explicit kernel sum")
{
	auto const data = blobs(3, 20, 6, 2.0, 5);
	SvmModel const m = train(data, {KernelKind::polynomial, 2, 0.0, 1.0}, {});
	CHECK(m.kernel.gamma == 1.0 / 6);
	Rng rng(6);
	for (int i = 0; i < 100; ++i) {
		Eigen::VectorXd x(6);
		for (int d = 0; d < 6; ++d) {
			x(d) = 3 * rng.normal();
		}
		Eigen::VectorXd const dv = decision_values(m, x);
		for (int k = 0; k < 3; ++k) {
			REQUIRE(std::abs(dv(k) - explicit_sum(m, k, x)) <= 1e-9 * std::max(1.0, std::abs(dv(k))));
		}
		REQUIRE(argmax_lowest(dv * 3.5) == argmax_lowest(dv));
	}
}

TEST_CASE("ten gaussian blobs in 240 dimensions")
{
	auto const data = blobs(10, 50, 240, 0.3, 2026);
	std::vector<int> const perm = seeded_permutation(static_cast<int>(data.size()), 1);
	std::vector<LabeledSample> tr, te;
	for (size_t i = 0; i < perm.size(); ++i) {
		(i < perm.size() * 8 / 10 ? tr : te).push_back(data[perm[i]]);
	}
	for (KernelSpec k : {KernelSpec{KernelKind::linear}, KernelSpec{KernelKind::polynomial, 2, 0.0, 1.0}}) {
		SvmModel const m = train(tr, k, {1.0, 1e-3, 200, 7});
		CHECK(evaluate(m, te).accuracy >= 0.95);
	}
}

TEST_CASE("training is deterministic and schedule independent")
{
	auto const data = blobs(5, 12, 20, 1.0, 8);
	TrainParams const p{1.0, 1e-3, 200, 42};
	std::string const first = serialized(train(data, {KernelKind::polynomial, 2, 0.0, 1.0}, p));
	CHECK(serialized(train(data, {KernelKind::polynomial, 2, 0.0, 1.0}, p)) == first);
	setenv("OCR_THREADS", "1", 1);
	CHECK(serialized(train(data, {KernelKind::polynomial, 2, 0.0, 1.0}, p)) == first);
	unsetenv("OCR_THREADS");
}

TEST_CASE("evaluation counts")
{
	std::vector<LabeledSample> const set = {sample({0}, 0), sample({1}, 0), sample({10}, 1), sample({11}, 1)};
	SvmModel const m = train(set, {}, {});
	Evaluation const ok = evaluate(m, set);
	CHECK(ok.misclassification_rate == 0.0);
	std::vector<LabeledSample> flipped;
	for (auto s : set) {
		s.label = 1 - s.label;
		flipped.push_back(s);
	}
	Evaluation const bad = evaluate(m, flipped);
	CHECK(bad.accuracy == 0.0);
	CHECK(bad.confusion(0, 1) == 2);
	CHECK(bad.confusion(1, 0) == 2);
}
