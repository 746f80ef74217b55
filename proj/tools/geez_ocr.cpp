/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/codec.hpp"
#include "geez/error.hpp"
#include "geez/features.hpp"
#include "geez/morphology.hpp"
#include "geez/netpbm.hpp"
#include "geez/parallel.hpp"
#include "geez/pipeline.hpp"
#include "geez/preprocess.hpp"
#include "geez/segmentation.hpp"
#include "geez/svm.hpp"
#include "geez/synthbench.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace geez;

namespace {

struct ConfigFlags
{
	std::string path;
};

PipelineConfig
base_config(ConfigFlags const& flags)
{
	return flags.path.empty() ? PipelineConfig{} : load_config(flags.path);
}

std::ofstream
open_output(fs::path const& path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw LoadError("cannot write " + path.string());
	}
	return out;
}

template <typename Fn>
auto
run_stage_load(char const* name, Fn&& fn)
{
	try {
		return fn();
	} catch (std::exception const& e) {
		throw StageError(name, e.what());
	}
}

SegmentedChar
load_glyph_tagged(std::string const& path)
{
	return run_stage_load("load", [&] {
		try {
			return load_glyph(path);
		} catch (std::exception const& e) {
			throw LoadError(path + ": " + e.what());
		}
	});
}

void
burn_box(BinaryImage& img, BoundingBox const& b)
{
	for (int c = b.min_col; c <= b.max_col(); ++c) {
		img.set(b.min_row, c, true);
		img.set(b.max_row(), c, true);
	}
	for (int r = b.min_row; r <= b.max_row(); ++r) {
		img.set(r, b.min_col, true);
		img.set(r, b.max_col(), true);
	}
}

// binarize

struct BinarizeArgs
{
	ConfigFlags config;
	std::optional<int> window;
	std::optional<double> noise_var;
	std::string in;
	std::string out;
};

void
run_binarize(BinarizeArgs const& a)
{
	PipelineConfig cfg = base_config(a.config);
	if (a.window) {
		cfg.denoise.window = *a.window;
	}
	if (a.noise_var) {
		cfg.denoise.noise_variance = *a.noise_var;
	}
	cfg.validate();
	GrayImage const img = read_pgm(fs::path(a.in));
	Threshold t;
	BinaryImage const bin = preprocess_page(img, cfg.denoise, &t);
	write_pbm(fs::path(a.out), bin);
	std::cout << format_real(t.value) << '\n';
}

// morph

struct MorphArgs
{
	std::string op;
	std::string se = "3x3";
	long long min_area = 8;
	std::string in;
	std::string out;
};

void
run_morph(MorphArgs const& a)
{
	BinaryImage const img = read_pbm(fs::path(a.in));
	BinaryImage result;
	if (a.op == "dilate") {
		result = dilate_rect(img, parse_se(a.se));
	} else if (a.op == "erode") {
		result = erode_rect(img, parse_se(a.se));
	} else if (a.op == "close") {
		result = close_rect(img, parse_se(a.se));
	} else if (a.op == "open") {
		result = area_open(img, a.min_area);
	} else {
		result = thin(img);
	}
	write_pbm(fs::path(a.out), result);
}

// segment

struct SegmentArgs
{
	ConfigFlags config;
	std::string mode = "modified";
	std::optional<std::string> se;
	std::optional<double> se_scale;
	std::optional<long long> min_area;
	std::string out_dir;
	std::string overlay;
	std::string page;
};

void
run_segment(SegmentArgs const& a)
{
	PipelineConfig cfg = base_config(a.config);
	if (a.se) {
		cfg.segmenter.se_override = parse_se(*a.se);
	}
	if (a.se_scale) {
		cfg.segmenter.se_scale = *a.se_scale;
		cfg.segmenter.se_override.reset();
	}
	if (a.min_area) {
		cfg.segmenter.min_area = *a.min_area;
	}
	cfg.validate();
	BinaryImage const page = read_pbm(fs::path(a.page));
	std::vector<SegmentedChar> segs = a.mode == "plain" ? segment_plain(page, cfg.segmenter.min_area)
														: segment_modified(page, cfg.segmenter);
	segs = order_reading(std::move(segs));

	fs::create_directories(a.out_dir);
	char name[32];
	for (auto const& s : segs) {
		std::snprintf(name, sizeof name, "seg_%04d.pbm", s.order_index);
		write_pbm(fs::path(a.out_dir) / name, s.image);
	}
	if (!a.overlay.empty()) {
		BinaryImage overlay = page;
		for (auto const& s : segs) {
			burn_box(overlay, s.source_box);
		}
		write_pbm(fs::path(a.overlay), overlay);
	}
	std::cout << segs.size() << '\n';
}

// features

struct FeaturesArgs
{
	ConfigFlags config;
	bool layout = false;
	std::string glyph;
};

void
run_features(FeaturesArgs const& a)
{
	PipelineConfig const cfg = base_config(a.config);
	if (a.layout) {
		for (auto const& g : feature_layout(cfg.features)) {
			std::cout << g.name << '\t' << g.offset << '\t' << g.length << '\n';
		}
		return;
	}
	GlobalFeatureVector const f = assemble(load_glyph_tagged(a.glyph), cfg.features);
	for (double v : f.values) {
		std::cout << format_real(v) << '\n';
	}
}

// train / predict / evaluate

struct TrainArgs
{
	ConfigFlags config;
	std::string manifest;
	std::optional<std::string> kernel;
	std::optional<int> degree;
	std::optional<double> gamma;
	std::optional<double> coef0;
	std::optional<double> c;
	std::optional<std::uint64_t> seed;
	std::string map;
	std::string out;
};

void
run_train(TrainArgs const& a)
{
	PipelineConfig cfg = base_config(a.config);
	if (a.kernel) {
		if (*a.kernel == "linear") {
			cfg.kernel.kind = KernelKind::linear;
		} else {
			cfg.kernel.kind = KernelKind::polynomial;
		}
	}
	if (a.degree) {
		cfg.kernel.degree = *a.degree;
	}
	if (a.gamma) {
		cfg.kernel.gamma = *a.gamma;
	}
	if (a.coef0) {
		cfg.kernel.coef0 = *a.coef0;
	}
	if (a.c) {
		cfg.train.c = *a.c;
	}
	if (a.seed) {
		cfg.train.seed = *a.seed;
	}
	cfg.validate();

	DatasetManifest const manifest = parse_manifest(fs::path(a.manifest));
	if (!a.map.empty()) {
		check_manifest(manifest, load_class_map(a.map));
	}
	std::vector<LabeledSample> samples;
	try {
		samples = load_samples(manifest, cfg.features, fs::path(a.manifest).parent_path());
	} catch (Error const& e) {
		throw StageError("features", e.what());
	}
	ModelInfo info{cfg.features, feature_layout(cfg.features), a.map};
	SvmModel model;
	try {
		model = train(samples, cfg.kernel, cfg.train, info);
	} catch (Error const& e) {
		throw StageError("train", e.what());
	}
	save_model(fs::path(a.out), model);
}

struct PredictArgs
{
	std::string model;
	std::string map;
	std::vector<std::string> glyphs;
};

void
run_predict(PredictArgs const& a)
{
	SvmModel const model = run_stage_load("load", [&] { return load_model(fs::path(a.model)); });
	std::optional<ClassMap> map;
	if (!a.map.empty()) {
		map = run_stage_load("load", [&] { return load_class_map(a.map); });
	}
	for (auto const& g : a.glyphs) {
		int const id = predict(model, assemble(load_glyph_tagged(g), model.feature_config).values);
		std::cout << id;
		if (map) {
			std::cout << '\t' << labels_to_text({id}, *map);
		}
		std::cout << '\n';
	}
}

struct EvaluateArgs
{
	std::string model;
	std::string manifest;
};

void
run_evaluate(EvaluateArgs const& a)
{
	SvmModel const model = load_model(fs::path(a.model));
	DatasetManifest const manifest = parse_manifest(fs::path(a.manifest));
	std::vector<LabeledSample> const test =
		load_samples(manifest, model.feature_config, fs::path(a.manifest).parent_path());
	Evaluation const ev = evaluate(model, test);
	std::cout << "accuracy," << format_real(ev.accuracy) << '\n';
	std::cout << "misclassification_rate," << format_real(ev.misclassification_rate) << '\n';
	std::cout << "correct," << ev.correct << "\ntotal," << ev.total << '\n';
	std::cout << "confusion";
	for (int p = 0; p < ev.confusion.cols(); ++p) {
		std::cout << ',' << p;
	}
	std::cout << '\n';
	for (int t = 0; t < ev.confusion.rows(); ++t) {
		std::cout << t;
		for (int p = 0; p < ev.confusion.cols(); ++p) {
			std::cout << ',' << ev.confusion(t, p);
		}
		std::cout << '\n';
	}
}

// recognize

struct RecognizeArgs
{
	ConfigFlags config;
	std::string model;
	std::string map;
	std::string page;
	std::string out;
	std::string diagnostics;
};

GrayImage
read_page(fs::path const& path)
{
	auto img = read_pnm(path);
	if (auto* gray = std::get_if<GrayImage>(&img)) {
		return std::move(*gray);
	}
	BinaryImage const& bin = std::get<BinaryImage>(img);
	GrayImage out(bin.width(), bin.height(), 255);
	for (int r = 0; r < bin.height(); ++r) {
		for (int c = 0; c < bin.width(); ++c) {
			if (bin.get(r, c)) {
				out(r, c) = 0;
			}
		}
	}
	return out;
}

void
write_diagnostics(std::ostream& out, Recognition const& rec)
{
	out << "index,min_col,min_row,width,height,class_id,margin\n";
	for (std::size_t i = 0; i < rec.glyphs.size(); ++i) {
		auto const& g = rec.glyphs[i];
		out << i << ',' << g.box.min_col << ',' << g.box.min_row << ',' << g.box.width << ',' << g.box.height
			<< ',' << g.class_id << ',' << format_real(g.margin) << '\n';
	}
}

void
run_recognize(RecognizeArgs const& a)
{
	PipelineConfig const cfg = base_config(a.config);
	SvmModel const model = run_stage_load("load", [&] { return load_model(fs::path(a.model)); });
	ClassMap const map = run_stage_load("load", [&] { return load_class_map(a.map); });

	if (fs::is_directory(a.page)) {
		std::vector<fs::path> pages;
		for (auto const& e : fs::directory_iterator(a.page)) {
			auto const ext = e.path().extension();
			if (ext == ".pgm" || ext == ".pbm") {
				pages.push_back(e.path());
			}
		}
		std::sort(pages.begin(), pages.end());
		if (a.out.empty()) {
			throw ParameterError("-o must name an output directory when the input is a directory");
		}
		fs::create_directories(a.out);
		parallel_for(static_cast<int>(pages.size()), [&](int i) {
			Recognition const rec = recognize_page(read_page(pages[i]), model, map, cfg);
			fs::path const stem = fs::path(a.out) / pages[i].stem();
			open_output(fs::path(stem).replace_extension(".txt")) << rec.text << '\n';
			if (!a.diagnostics.empty()) {
				auto out = open_output(fs::path(stem).replace_extension(".csv"));
				write_diagnostics(out, rec);
			}
		});
		return;
	}

	GrayImage const page = run_stage_load("load", [&] { return read_page(a.page); });
	Recognition const rec = recognize_page(page, model, map, cfg);
	if (a.out.empty()) {
		std::cout << rec.text << '\n';
	} else {
		open_output(a.out) << rec.text << '\n';
	}
	if (!a.diagnostics.empty()) {
		auto out = open_output(a.diagnostics);
		write_diagnostics(out, rec);
	}
}

// synth / eval-seg

struct SynthArgs
{
	SynthParams params;
	std::string out;
	std::string truth;
	std::string gray;
	double noise = 12.0;
	std::string corpus;
	int classes = 191;
	int variants = 10;
};

ClassMap
synthetic_class_map(int n)
{
	ClassMap map;
	for (int i = 0; i < n; ++i) {
		char name[16];
		std::snprintf(name, sizeof name, "G%03d", i);
		map.entries.push_back({static_cast<char32_t>(ethiopic_first + i), name});
	}
	return map;
}

void
write_corpus(SynthArgs const& a)
{
	if (a.classes < 1 || a.classes > ethiopic_last - ethiopic_first + 1 || a.variants < 1) {
		throw ParameterError("corpus needs 1..384 classes and at least one variant");
	}
	fs::path const dir(a.corpus);
	fs::create_directories(dir / "glyphs");
	auto map_out = open_output(dir / "classes.tsv");
	write_class_map(map_out, synthetic_class_map(a.classes));
	auto manifest = open_output(dir / "manifest.csv");
	char name[48];
	for (int c = 0; c < a.classes; ++c) {
		for (int v = 0; v < a.variants; ++v) {
			std::snprintf(name, sizeof name, "glyphs/c%03d_v%02d.pbm", c, v);
			GlyphSpec spec = class_glyph(c, a.classes, mix_seed(a.params.seed, v));
			spec.margin = 1;
			write_pbm(dir / name, gen_glyph(spec).image);
			manifest << name << ',' << c << '\n';
		}
	}
}

void
run_synth(SynthArgs const& a)
{
	if (!a.corpus.empty()) {
		write_corpus(a);
		return;
	}
	Page const page = synthesize_page(a.params);
	write_pbm(fs::path(a.out), page.image);
	if (!a.truth.empty()) {
		auto out = open_output(a.truth);
		write_truth(out, page);
	}
	if (!a.gray.empty()) {
		write_pgm(fs::path(a.gray), to_gray(page.image, 40, 200, a.noise, mix_seed(a.params.seed, 1)));
	}
}

struct EvalSegArgs
{
	ConfigFlags config;
	std::string page;
	std::string truth;
	std::optional<std::string> se;
	double min_iou = 0.8;
	std::string report;
};

void
run_eval_seg(EvalSegArgs const& a)
{
	PipelineConfig cfg = base_config(a.config);
	if (a.se) {
		cfg.segmenter.se_override = parse_se(*a.se);
	}
	cfg.validate();
	std::ifstream truth_in(a.truth);
	if (!truth_in) {
		throw LoadError("cannot open " + a.truth);
	}
	Page page = read_truth(truth_in);
	page.image = read_pbm(fs::path(a.page));
	SegReport const report = compare_segmenters(page, cfg.segmenter, a.min_iou);
	if (a.report.empty()) {
		write_report(std::cout, report);
	} else {
		auto out = open_output(a.report);
		write_report(out, report);
	}
}

} // namespace

int
main(int argc, char** argv)
{
	CLI::App app{"Ge'ez handwritten OCR toolkit. Set OCR_THREADS to cap worker threads."};
	app.require_subcommand(1);
	app.set_version_flag("--version", "geez-ocr 1.0");

	std::function<void()> action;
	std::string stage;
	auto bind = [&](CLI::App* sub, auto fn) {
		sub->callback([&action, &stage, sub, fn] {
			stage = sub->get_name();
			action = fn;
		});
	};
	auto add_config = [](CLI::App* sub, ConfigFlags& c) {
		sub->add_option("--config", c.path, "key=value configuration file; flags override it")
			->check(CLI::ExistingFile);
	};

	BinarizeArgs bin;
	auto* s_bin = app.add_subcommand("binarize", "Denoise, pick the Isodata threshold and binarize; prints the threshold");
	add_config(s_bin, bin.config);
	s_bin->add_option("--window", bin.window, "odd denoise window side (default 3)");
	s_bin->add_option("--noise-var", bin.noise_var, "noise variance (default: mean local variance)");
	s_bin->add_option("in", bin.in, "input PGM")->required()->check(CLI::ExistingFile);
	s_bin->add_option("out", bin.out, "output PBM")->required();
	bind(s_bin, [&] { run_binarize(bin); });

	MorphArgs morph;
	auto* s_morph = app.add_subcommand("morph", "Apply one morphological operator to a PBM");
	s_morph->add_option("--op", morph.op, "dilate|erode|close|open|thin (open = area opening)")
		->required()
		->check(CLI::IsMember({"dilate", "erode", "close", "open", "thin"}));
	s_morph->add_option("--se", morph.se, "rectangular structuring element MxN (rows x cols)")->capture_default_str();
	s_morph->add_option("--min-area", morph.min_area, "smallest component kept by open")->capture_default_str();
	s_morph->add_option("in", morph.in, "input PBM")->required()->check(CLI::ExistingFile);
	s_morph->add_option("out", morph.out, "output PBM")->required();
	bind(s_morph, [&] { run_morph(morph); });

	SegmentArgs seg;
	auto* s_seg = app.add_subcommand("segment", "Split a binary page into glyph images in reading order");
	add_config(s_seg, seg.config);
	s_seg->add_option("--mode", seg.mode, "plain|modified")->capture_default_str()->check(CLI::IsMember({"plain", "modified"}));
	auto* se_opt = s_seg->add_option("--se", seg.se, "fixed bridging element MxN");
	s_seg->add_option("--se-scale", seg.se_scale, "bridging element as a fraction of mean box size")->excludes(se_opt);
	s_seg->add_option("--min-area", seg.min_area, "smallest component kept, in pixels");
	s_seg->add_option("--out-dir", seg.out_dir, "directory for seg_NNNN.pbm files")->required();
	s_seg->add_option("--overlay", seg.overlay, "page copy with segment boxes drawn");
	s_seg->add_option("page", seg.page, "input PBM")->required()->check(CLI::ExistingFile);
	bind(s_seg, [&] { run_segment(seg); });

	FeaturesArgs feat;
	auto* s_feat = app.add_subcommand("features", "Print the global descriptor of a glyph, one value per line");
	add_config(s_feat, feat.config);
	s_feat->add_flag("--layout", feat.layout, "print group name, offset and length instead");
	s_feat->add_option("glyph", feat.glyph, "glyph PBM or PGM")->check(CLI::ExistingFile);
	s_feat->callback([&] {
		stage = "features";
		if (!feat.layout && feat.glyph.empty()) {
			throw CLI::ValidationError("glyph", "a glyph path is required unless --layout is given");
		}
		action = [&] { run_features(feat); };
	});

	TrainArgs tr;
	auto* s_train = app.add_subcommand("train", "Train a one-vs-rest SVM from a path,id manifest");
	add_config(s_train, tr.config);
	s_train->add_option("--manifest", tr.manifest, "training manifest CSV")->required()->check(CLI::ExistingFile);
	s_train->add_option("--kernel", tr.kernel, "linear|poly")->check(CLI::IsMember({"linear", "poly"}));
	s_train->add_option("--degree", tr.degree, "polynomial degree");
	s_train->add_option("--gamma", tr.gamma, "polynomial gamma (<= 0 means 1/D)");
	s_train->add_option("--coef0", tr.coef0, "polynomial offset");
	s_train->add_option("--c", tr.c, "soft-margin penalty");
	s_train->add_option("--seed", tr.seed, "solver seed");
	s_train->add_option("--map", tr.map, "class map TSV to validate ids against")->check(CLI::ExistingFile);
	s_train->add_option("-o,--out", tr.out, "model file")->required();
	bind(s_train, [&] { run_train(tr); });

	PredictArgs pr;
	auto* s_pred = app.add_subcommand("predict", "Print the predicted class id of each glyph");
	s_pred->add_option("--model", pr.model, "model file")->required()->check(CLI::ExistingFile);
	s_pred->add_option("--map", pr.map, "class map TSV; adds the character after the id")->check(CLI::ExistingFile);
	s_pred->add_option("glyphs", pr.glyphs, "glyph PBM or PGM files")->required()->check(CLI::ExistingFile);
	bind(s_pred, [&] { run_predict(pr); });

	EvaluateArgs ev;
	auto* s_eval = app.add_subcommand("evaluate", "Accuracy, misclassification rate and confusion table on a manifest");
	s_eval->add_option("--model", ev.model, "model file")->required()->check(CLI::ExistingFile);
	s_eval->add_option("--manifest", ev.manifest, "test manifest CSV")->required()->check(CLI::ExistingFile);
	bind(s_eval, [&] { run_evaluate(ev); });

	RecognizeArgs rec;
	auto* s_rec = app.add_subcommand("recognize", "Full page recognition to UTF-8 text");
	add_config(s_rec, rec.config);
	s_rec->add_option("--model", rec.model, "model file")->required()->check(CLI::ExistingFile);
	s_rec->add_option("--map", rec.map, "class map TSV")->required()->check(CLI::ExistingFile);
	s_rec->add_option("-o,--out", rec.out, "output text file (a directory when the input is one)");
	s_rec->add_option("--diagnostics", rec.diagnostics, "per-glyph box, class and margin CSV");
	s_rec->add_option("page", rec.page, "page PGM/PBM or a directory of pages")->required()->check(CLI::ExistingPath);
	bind(s_rec, [&] { run_recognize(rec); });

	SynthArgs syn;
	auto* s_syn = app.add_subcommand("synth", "Generate a seeded synthetic page with truth boxes, or a glyph corpus");
	s_syn->add_option("--glyphs", syn.params.glyphs, "glyph count")->capture_default_str();
	s_syn->add_option("--disconnected-frac", syn.params.disconnected_frac, "fraction of two-stroke glyphs")->capture_default_str()
		->check(CLI::Range(0.0, 1.0));
	s_syn->add_option("--gap", syn.params.gap, "rows between detached strokes")->capture_default_str();
	s_syn->add_option("--speckle", syn.params.speckle, "salt probability away from ink")->capture_default_str();
	s_syn->add_option("--columns", syn.params.columns, "glyphs per row")->capture_default_str();
	s_syn->add_option("--spacing", syn.params.spacing, "blank pixels between cells")->capture_default_str();
	s_syn->add_option("--seed", syn.params.seed, "generator seed")->capture_default_str();
	s_syn->add_option("-o,--out", syn.out, "page PBM");
	s_syn->add_option("--truth", syn.truth, "truth CSV");
	s_syn->add_option("--gray", syn.gray, "also write a noisy gray PGM of the page");
	s_syn->add_option("--noise", syn.noise, "noise sigma for --gray")->capture_default_str();
	s_syn->add_option("--corpus", syn.corpus, "write a class-glyph corpus (glyphs/, manifest.csv, classes.tsv) here");
	s_syn->add_option("--classes", syn.classes, "corpus class count")->capture_default_str();
	s_syn->add_option("--variants", syn.variants, "corpus variants per class")->capture_default_str();
	s_syn->callback([&] {
		stage = "synth";
		if (syn.corpus.empty() && syn.out.empty()) {
			throw CLI::ValidationError("-o", "either -o or --corpus is required");
		}
		action = [&] { run_synth(syn); };
	});

	EvalSegArgs es;
	auto* s_es = app.add_subcommand("eval-seg", "Score plain and modified segmentation against truth boxes");
	add_config(s_es, es.config);
	s_es->add_option("--page", es.page, "page PBM")->required()->check(CLI::ExistingFile);
	s_es->add_option("--truth", es.truth, "truth CSV")->required()->check(CLI::ExistingFile);
	s_es->add_option("--se", es.se, "fixed bridging element MxN");
	s_es->add_option("--min-iou", es.min_iou, "IoU needed for a correct segment")->capture_default_str();
	s_es->add_option("--report", es.report, "report CSV (default: stdout)");
	bind(s_es, [&] { run_eval_seg(es); });

	try {
		app.parse(argc, argv);
	} catch (CLI::ParseError const& e) {
		return app.exit(e);
	}

	try {
		action();
	} catch (StageError const& e) {
		std::cerr << '[' << e.stage() << "] " << e.what() << '\n';
		return 1;
	} catch (std::exception const& e) {
		std::cerr << '[' << stage << "] " << e.what() << '\n';
		return 1;
	}
	return 0;
}
