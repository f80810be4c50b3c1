#include "refkernel/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "refkernel/errors.hpp"

namespace refkernel {

namespace {

std::string hex(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

void write_vector(std::ostream& out, const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ' ';
        out << hex(v[i]);
    }
    out << '\n';
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i) out << ' ';
            out << hex(m(i, j));
        }
        out << '\n';
    }
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::string word() {
        std::string w;
        if (!(in_ >> w)) throw ModelFormatError("model file truncated");
        return w;
    }

    void expect(const std::string& token) {
        const std::string w = word();
        if (w != token) {
            throw ModelFormatError("model file: expected '" + token + "', found '" + w + "'");
        }
    }

    std::size_t count() {
        const std::string w = word();
        try {
            return static_cast<std::size_t>(std::stoull(w));
        } catch (const std::exception&) {
            throw ModelFormatError("model file: expected a count, found '" + w + "'");
        }
    }

    double number() {
        const std::string w = word();
        char* end = nullptr;
        const double v = std::strtod(w.c_str(), &end);
        if (end != w.c_str() + w.size()) {
            throw ModelFormatError("model file: bad number '" + w + "'");
        }
        return v;
    }

    std::vector<double> vector(std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = number();
        return v;
    }

    DenseMatrix matrix() {
        const std::size_t rows = count();
        const std::size_t cols = count();
        DenseMatrix m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = number();
        return m;
    }

private:
    std::istream& in_;
};

// The pseudo-inverse is a pure function of the stored eigensystem; recomputing
// it entrywise matches the fit-time computation bit for bit.
void rebuild_pseudo_inverse(ReferenceModel& ref) {
    const std::size_t m = ref.reference_count();
    const std::size_t r = ref.rank();
    ref.pseudo_inverse = DenseMatrix(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (std::size_t t = 0; t < r; ++t) {
                s += ref.eigenvectors(i, t) * ref.eigenvectors(j, t) / ref.eigenvalues[t];
            }
            ref.pseudo_inverse(i, j) = s;
        }
    }
}

} // namespace

void save_model(const OneClassModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write model file " + path);

    out << "refkernel-model " << kModelFormatVersion << '\n';
    out << "method " << method_label(model.spec.method) << '\n';
    out << "path " << path_label(model.spec.path) << '\n';
    out << "case " << case_label(model.spec.ref_case) << '\n';
    out << "kernel " << (model.spec.kernel == KernelKind::rbf ? "rbf" : "linear") << ' '
        << hex(model.spec.sigma) << '\n';
    out << "hyper " << hex(model.spec.hyper) << '\n';
    out << "eigen_tol " << hex(model.spec.eigen_tol) << '\n';
    out << "threshold " << hex(model.threshold) << '\n';
    out << "center_norm_sq " << hex(model.center_norm_sq) << '\n';
    out << "kkt_gap " << hex(model.kkt_gap) << '\n';
    out << "iterations " << model.iterations << '\n';
    out << "rank " << model.rank << '\n';

    out << "norm " << model.norm.mean.size() << '\n';
    write_vector(out, model.norm.mean);
    write_vector(out, model.norm.stddev);

    out << "train ";
    write_matrix(out, model.train);

    out << "alpha " << model.alpha.size() << '\n';
    write_vector(out, model.alpha);
    out << "support " << model.support_idx.size() << '\n';
    for (std::size_t i = 0; i < model.support_idx.size(); ++i) {
        if (i) out << ' ';
        out << model.support_idx[i];
    }
    out << '\n';

    if (model.reference) {
        const ReferenceModel& ref = *model.reference;
        out << "reference present\n";
        out << "references ";
        write_matrix(out, ref.references);
        out << "centering " << ref.centering.reference_count << '\n';
        write_vector(out, ref.centering.column_means);
        out << "grand_mean " << hex(ref.centering.grand_mean) << '\n';
        out << "eigenvalues " << ref.eigenvalues.size() << '\n';
        write_vector(out, ref.eigenvalues);
        out << "eigenvectors ";
        write_matrix(out, ref.eigenvectors);
        out << "tol " << hex(ref.tol) << '\n';
    } else {
        out << "reference absent\n";
    }

    if (model.spec.path == PathKind::mapping) {
        out << "features ";
        write_matrix(out, model.train_features);
    } else {
        out << "features absent\n";
    }
    out << "end\n";
    if (!out.good()) throw Error("write failed for model file " + path);
}

OneClassModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelFormatError("cannot open model file " + path);
    Reader r(in);

    r.expect("refkernel-model");
    const std::size_t version = r.count();
    if (version != static_cast<std::size_t>(kModelFormatVersion)) {
        throw ModelFormatError("unsupported model format version " + std::to_string(version) +
                               ", expected " + std::to_string(kModelFormatVersion));
    }

    OneClassModel model;
    try {
        r.expect("method");
        model.spec.method = method_from_label(r.word());
        r.expect("path");
        model.spec.path = path_from_label(r.word());
        r.expect("case");
        model.spec.ref_case = case_from_label(r.word());
        r.expect("kernel");
        const std::string kind = r.word();
        if (kind == "rbf") {
            model.spec.kernel = KernelKind::rbf;
        } else if (kind == "linear") {
            model.spec.kernel = KernelKind::linear;
        } else {
            throw ModelFormatError("model file: unknown kernel '" + kind + "'");
        }
        model.spec.sigma = r.number();
        r.expect("hyper");
        model.spec.hyper = r.number();
        r.expect("eigen_tol");
        model.spec.eigen_tol = r.number();
        r.expect("threshold");
        model.threshold = r.number();
        r.expect("center_norm_sq");
        model.center_norm_sq = r.number();
        r.expect("kkt_gap");
        model.kkt_gap = r.number();
        r.expect("iterations");
        model.iterations = r.count();
        r.expect("rank");
        model.rank = r.count();

        r.expect("norm");
        const std::size_t dim = r.count();
        model.norm.mean = r.vector(dim);
        model.norm.stddev = r.vector(dim);

        r.expect("train");
        model.train = r.matrix();

        r.expect("alpha");
        model.alpha = r.vector(r.count());
        r.expect("support");
        const std::size_t support = r.count();
        model.support_idx.resize(support);
        for (std::size_t i = 0; i < support; ++i) model.support_idx[i] = r.count();

        r.expect("reference");
        const std::string ref_state = r.word();
        if (ref_state == "present") {
            ReferenceModel ref;
            r.expect("references");
            ref.references = r.matrix();
            r.expect("centering");
            ref.centering.reference_count = r.count();
            ref.centering.column_means = r.vector(ref.centering.reference_count);
            r.expect("grand_mean");
            ref.centering.grand_mean = r.number();
            r.expect("eigenvalues");
            ref.eigenvalues = r.vector(r.count());
            r.expect("eigenvectors");
            ref.eigenvectors = r.matrix();
            r.expect("tol");
            ref.tol = r.number();
            ref.base = model.spec.kernel == KernelKind::rbf
                           ? BaseKernelSpec::rbf(model.spec.sigma)
                           : BaseKernelSpec::linear();
            rebuild_pseudo_inverse(ref);
            model.reference = std::move(ref);
        } else if (ref_state != "absent") {
            throw ModelFormatError("model file: bad reference marker '" + ref_state + "'");
        }

        r.expect("features");
        if (model.spec.path == PathKind::mapping) {
            model.train_features = r.matrix();
        } else {
            r.expect("absent");
        }
        r.expect("end");
    } catch (const ModelFormatError&) {
        throw;
    } catch (const Error& e) {
        throw ModelFormatError("model file " + path + ": " + e.what());
    }
    return model;
}

} // namespace refkernel
