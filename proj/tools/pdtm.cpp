// pdtm: generate synthetic clouds, fit k-center power-distance models to the
// empirical distance-to-measure, evaluate the resulting fields pointwise or
// on grids, and compare fields against each other.

#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kpdtm/kpdtm.hpp"

namespace {

using namespace kpdtm;

// Sink that writes to stdout when the path is "-".
class OutputFile {
public:
    explicit OutputFile(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
        }
        out_ = file_.is_open() ? &file_ : &std::cout;
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

Shape parse_shape(const std::string& name) {
    if (name == "circle") return Shape::Circle;
    if (name == "sideways") return Shape::Sideways;
    if (name == "square") return Shape::Square;
    if (name == "segment") return Shape::Segment;
    throw std::runtime_error("unknown shape '" + name + "'");
}

// A scalar field (squared values) together with everything it needs to stay
// alive: the data cloud, its index and/or a loaded model.
struct Field {
    std::string label;
    std::size_t d = 0;
    PointCloud data;
    std::unique_ptr<NeighborIndex> index;
    PowerModel model;
    std::size_t q = 0;
    bool use_dtm = false;

    double sq(std::span<const double> x) const {
        return use_dtm ? dtm_sq(*index, x, q) : eval_power_sq(model, x);
    }
};

Field make_field(const std::string& selector, const std::string& data_path, std::size_t q) {
    Field f;
    if (selector == "dtm" || selector == "witnessed") {
        if (data_path.empty())
            throw std::runtime_error(selector + " field requires --data");
        if (q == 0) throw std::runtime_error(selector + " field requires --q >= 1");
        f.data = read_points_file(data_path);
        f.index = std::make_unique<NeighborIndex>(f.data);
        f.q = q;
        if (selector == "dtm") {
            f.use_dtm = true;
        } else {
            f.model = witnessed_model(*f.index, q);
        }
        f.d = f.data.dim();
        f.label = selector;
        return f;
    }
    std::string path = selector;
    if (path.rfind("model:", 0) == 0) path = path.substr(6);
    f.model = load_model(path).model;
    f.d = f.model.d;
    f.label = "model(" + path + ")";
    return f;
}

void add_generate(CLI::App& app) {
    auto cmd = app.add_subcommand("generate", "Sample a synthetic point cloud to CSV");
    auto opts = std::make_shared<ShapeSpec>();
    auto shape = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto box = std::make_shared<std::vector<double>>();
    auto header = std::make_shared<bool>(false);

    cmd->add_option("--shape", *shape, "circle | sideways | square | segment")->required();
    cmd->add_option("--n", opts->n, "number of points")->required();
    cmd->add_option("--radius", opts->radius, "circle radius");
    cmd->add_option("--r1", opts->r1, "sideways: left loop radius");
    cmd->add_option("--r2", opts->r2, "sideways: right loop radius");
    cmd->add_option("--side", opts->side, "square side");
    cmd->add_option("--length", opts->length, "segment length");
    cmd->add_option("--sigma", opts->noise_sigma, "Gaussian noise std per coordinate");
    cmd->add_option("--outlier-frac", opts->outlier_fraction, "fraction replaced by outliers");
    cmd->add_option("--outlier-box", *box, "outlier box: x0 y0 x1 y1")->expected(4);
    cmd->add_option("--seed", opts->seed, "random seed");
    cmd->add_option("-o,--output", *output, "output CSV ('-' for stdout)")->required();
    cmd->add_flag("--header", *header, "write a header line");

    cmd->callback([=]() {
        opts->shape = parse_shape(*shape);
        if (!box->empty()) {
            opts->outlier_lo = {(*box)[0], (*box)[1]};
            opts->outlier_hi = {(*box)[2], (*box)[3]};
        }
        const PointCloud cloud = sample(*opts);
        OutputFile out(*output);
        write_points(out.stream(), cloud, *header);
    });
}

void add_fit(CLI::App& app) {
    auto cmd = app.add_subcommand("fit", "Fit a k-center power model by Lloyd iterations");
    struct Args {
        std::string input, output, init = "uniform", warm_model, anchors_csv;
        FitOptions opt;
    };
    auto a = std::make_shared<Args>();

    cmd->add_option("-i,--input", a->input, "input points CSV")->required();
    cmd->add_option("--q", a->opt.q, "neighbor count (mass parameter q = nh)")->required();
    cmd->add_option("--k", a->opt.k, "number of centers")->required();
    cmd->add_option("--restarts", a->opt.restarts, "independent restarts");
    cmd->add_option("--max-iter", a->opt.max_iter, "iteration cap per restart");
    cmd->add_option("--seed", a->opt.seed, "random seed");
    cmd->add_option("--init", a->init, "uniform | warm | explicit");
    cmd->add_option("--warm-model", a->warm_model, "model JSON whose anchors seed the fit");
    cmd->add_option("--anchors", a->anchors_csv, "explicit anchors CSV (k rows)");
    cmd->add_option("-o,--output", a->output, "output model JSON")->required();

    cmd->callback([=]() {
        const PointCloud cloud = read_points_file(a->input);
        if (a->init == "uniform") {
            a->opt.init = InitStrategy::UniformDistinct;
        } else if (a->init == "warm") {
            if (a->warm_model.empty()) throw std::runtime_error("--init warm needs --warm-model");
            a->opt.init = InitStrategy::WarmStart;
            a->opt.init_anchors = load_model(a->warm_model).model.anchors;
        } else if (a->init == "explicit") {
            if (a->anchors_csv.empty()) throw std::runtime_error("--init explicit needs --anchors");
            a->opt.init = InitStrategy::ExplicitList;
            a->opt.init_anchors = read_points_file(a->anchors_csv).coords();
        } else {
            throw std::runtime_error("unknown init strategy '" + a->init + "'");
        }

        const FitResult res = fit(cloud, a->opt);

        std::cout << "fit: n=" << cloud.size() << " d=" << cloud.dim() << " q=" << a->opt.q
                  << " k=" << a->opt.k << " restarts=" << a->opt.restarts
                  << " max_iter=" << a->opt.max_iter << " seed=" << a->opt.seed << '\n';
        for (const auto& r : res.restarts)
            std::cout << "restart " << r.restart_id << ": loss=" << format_double(r.final_loss)
                      << " iters=" << r.iterations << " reseeds=" << r.reseeds
                      << " converged=" << (r.converged ? "yes" : "no") << '\n';
        std::cout << "best restart: " << res.report.restart_id << '\n'
                  << "final loss: " << format_double(res.report.losses.back()) << '\n';

        FitMeta meta;
        meta.seed = a->opt.seed;
        meta.restarts = a->opt.restarts;
        meta.iterations = res.report.iterations;
        meta.reseeds = res.report.reseeds;
        meta.final_loss = res.report.losses.back();
        meta.data_hash = hash_file(a->input);
        save_model(a->output, res.model, meta);
        std::cout << "model written to: " << a->output << '\n';
    });
}

struct FieldArgs {
    std::string model_path, data_path;
    bool dtm = false, witnessed = false;
    std::size_t q = 0;
};

void add_field_flags(CLI::App* cmd, FieldArgs& f) {
    cmd->add_option("--model", f.model_path, "model JSON to evaluate");
    cmd->add_flag("--dtm", f.dtm, "evaluate the empirical DTM of --data");
    cmd->add_flag("--witnessed", f.witnessed, "evaluate the q-witnessed distance of --data");
    cmd->add_option("--data", f.data_path, "data CSV for --dtm/--witnessed");
    cmd->add_option("--q", f.q, "neighbor count for --dtm/--witnessed");
}

Field resolve_field(const FieldArgs& f) {
    const int picked = int(!f.model_path.empty()) + int(f.dtm) + int(f.witnessed);
    if (picked != 1)
        throw std::runtime_error("pick exactly one of --model, --dtm, --witnessed");
    if (f.dtm) return make_field("dtm", f.data_path, f.q);
    if (f.witnessed) return make_field("witnessed", f.data_path, f.q);
    return make_field("model:" + f.model_path, f.data_path, f.q);
}

void add_eval(CLI::App& app) {
    auto cmd = app.add_subcommand("eval", "Evaluate a field at query points (distances)");
    auto f = std::make_shared<FieldArgs>();
    auto queries = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>("-");
    add_field_flags(cmd, *f);
    cmd->add_option("--queries", *queries, "query points CSV")->required();
    cmd->add_option("-o,--output", *output, "output CSV ('-' for stdout)");

    cmd->callback([=]() {
        const Field field = resolve_field(*f);
        const PointCloud qs = read_points_file(*queries);
        if (qs.dim() != field.d)
            throw std::runtime_error("query dimension " + std::to_string(qs.dim()) +
                                     " does not match field dimension " +
                                     std::to_string(field.d));
        OutputFile out(*output);
        for (std::size_t i = 0; i < qs.size(); ++i)
            out.stream() << format_double(std::sqrt(field.sq(qs.point(i)))) << '\n';
    });
}

void add_grid(CLI::App& app) {
    auto cmd = app.add_subcommand("grid", "Evaluate a field on a regular grid");
    auto f = std::make_shared<FieldArgs>();
    auto spec = std::make_shared<GridSpec>();
    auto output = std::make_shared<std::string>("-");
    auto sublevel = std::make_shared<double>(-1.0);
    auto header = std::make_shared<bool>(false);
    add_field_flags(cmd, *f);
    cmd->add_option("--lower", spec->lower, "box lower corner (one value per axis)")->required();
    cmd->add_option("--upper", spec->upper, "box upper corner")->required();
    cmd->add_option("--res", spec->resolution, "cells per axis")->required();
    cmd->add_option("--sublevel", *sublevel, "also emit the mask of {distance <= r}");
    cmd->add_flag("--header", *header, "write a header line");
    cmd->add_option("-o,--output", *output, "output CSV ('-' for stdout)");

    cmd->callback([=]() {
        const Field field = resolve_field(*f);
        if (spec->lower.size() != field.d)
            throw std::runtime_error("grid dimension does not match field dimension");
        const Grid grid =
            eval_grid(*spec, [&](const std::vector<double>& x) { return field.sq(x); });
        std::vector<char> mask;
        if (*sublevel >= 0.0) mask = sublevel_mask(grid, *sublevel);

        OutputFile out(*output);
        if (*header) {
            for (std::size_t a = 0; a < field.d; ++a) out.stream() << 'x' << a << ',';
            out.stream() << "value";
            if (!mask.empty()) out.stream() << ",mask";
            out.stream() << '\n';
        }
        for (std::size_t c = 0; c < grid.size(); ++c) {
            const auto center = grid.cell_center(c);
            for (double v : center) out.stream() << format_double(v) << ',';
            out.stream() << format_double(std::sqrt(grid.values[c]));
            if (!mask.empty()) out.stream() << ',' << (mask[c] ? 1 : 0);
            out.stream() << '\n';
        }
    });
}

void add_compare(CLI::App& app) {
    auto cmd = app.add_subcommand(
        "compare", "Compare two fields over a point set (squared-value gaps)");
    struct Args {
        std::string field_a, field_b, input;
        std::size_t q = 0;
    };
    auto a = std::make_shared<Args>();
    cmd->add_option("--field-a", a->field_a, "dtm | witnessed | model:<path>")->required();
    cmd->add_option("--field-b", a->field_b, "dtm | witnessed | model:<path>")->required();
    cmd->add_option("-i,--input", a->input, "evaluation points CSV (also the data cloud)")
        ->required();
    cmd->add_option("--q", a->q, "neighbor count for dtm/witnessed selectors");

    cmd->callback([=]() {
        const PointCloud pts = read_points_file(a->input);
        const Field fa = make_field(a->field_a, a->input, a->q);
        const Field fb = make_field(a->field_b, a->input, a->q);
        if (fa.d != pts.dim() || fb.d != pts.dim())
            throw std::runtime_error("field dimensions do not match the input points");

        double l1 = 0.0, max_gap = 0.0;
        std::size_t violations = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double va = fa.sq(pts.point(i));
            const double vb = fb.sq(pts.point(i));
            const double gap = va - vb;
            l1 += std::abs(gap);
            max_gap = std::max(max_gap, std::abs(gap));
            if (va < vb - 1e-9) ++violations;  // A fell below B: dominance breach
        }
        l1 /= static_cast<double>(pts.size());

        std::cout << "points " << pts.size() << '\n'
                  << "field_a " << fa.label << '\n'
                  << "field_b " << fb.label << '\n'
                  << "l1_mean_sq_gap " << format_double(l1) << '\n'
                  << "max_sq_gap " << format_double(max_gap) << '\n'
                  << "dominance_violations " << violations << '\n';
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "distance-to-measure tooling: synthetic data, k-center power-distance fits,\n"
        "field evaluation and sublevel-set grids.\n"
        "Set PDTM_THREADS to cap internal parallelism (results do not depend on it)."};
    app.require_subcommand(1);
    add_generate(app);
    add_fit(app);
    add_eval(app);
    add_grid(app);
    add_compare(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "pdtm: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
