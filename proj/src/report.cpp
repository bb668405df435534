#include "qcgeom/report.hpp"

#include <cstdio>
#include <sstream>

namespace qcgeom {

namespace {

// Minimal JSON emitter: insertion order is serialization order, doubles are
// printed with %.17g so equal runs give equal bytes.
class JsonWriter {
public:
    void begin_object() { out_ += '{'; fresh_ = true; }
    void end_object() { out_ += '}'; fresh_ = false; }

    void key(const std::string& k) {
        if (!fresh_) out_ += ',';
        fresh_ = false;
        string_literal(k);
        out_ += ':';
    }

    void value(const std::string& s) { string_literal(s); }
    void value(double d) { out_ += fmt(d); }
    void value(std::uint64_t v) { out_ += std::to_string(v); }
    void value(bool b) { out_ += b ? "true" : "false"; }

    void value(const std::vector<double>& v) {
        out_ += '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out_ += ',';
            out_ += fmt(v[i]);
        }
        out_ += ']';
    }

    void raw(const std::string& s) { out_ += s; }
    void comma_if_needed() {
        if (!fresh_) out_ += ',';
        fresh_ = false;
    }

    const std::string& str() const { return out_; }

    static std::string fmt(double d) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", d);
        return buf;
    }

private:
    void string_literal(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    bool fresh_ = true;
};

}  // namespace

std::string to_json(const Report& r) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version"); w.value(r.schema_version);
    w.key("command"); w.value(r.command);
    w.key("surface"); {
        w.begin_object();
        w.key("file"); w.value(r.surface_file);
        w.key("dim"); w.value(static_cast<std::uint64_t>(r.dim));
        w.key("rho"); w.value(r.rho);
        w.end_object();
    }
    w.key("outcome"); w.value(r.outcome);
    if (!r.message.empty()) { w.key("message"); w.value(r.message); }

    if (r.has_classification) {
        w.key("classification");
        w.begin_object();
        w.key("label"); w.value(r.label);
        w.key("inertia"); w.raw("[" + std::to_string(r.inertia.pos) + "," +
                                 std::to_string(r.inertia.neg) + "," +
                                 std::to_string(r.inertia.zero) + "]");
        w.key("normalizer");
        {
            w.begin_object();
            w.key("a"); w.value(r.normalizer_a);
            w.key("omega"); w.value(r.normalizer_omega);
            w.key("q0"); w.value(r.normalizer_q0);
            w.end_object();
        }
        w.key("residual"); w.value(r.residual);
        w.end_object();
    }

    if (!r.batteries.empty()) {
        w.key("batteries");
        w.raw("[");
        for (std::size_t i = 0; i < r.batteries.size(); ++i) {
            const BatteryResult& b = r.batteries[i];
            if (i) w.raw(",");
            JsonWriter bw;
            bw.begin_object();
            bw.key("name"); bw.value(b.name);
            bw.key("pass"); bw.value(b.pass);
            bw.key("skipped"); bw.value(b.skipped);
            bw.key("score"); bw.value(b.score);
            if (!b.note.empty()) { bw.key("worst_check"); bw.value(b.note); }
            for (const auto& [k, v] : b.metrics) {
                bw.key(k);
                bw.value(v);
            }
            bw.end_object();
            w.raw(bw.str());
        }
        w.raw("]");
    }

    if (r.has_frame) {
        w.key("frame");
        w.begin_object();
        w.key("point"); w.value(r.frame_point);
        w.key("normal"); w.value(r.frame_normal);
        for (int s = 0; s < 3; ++s) {
            w.key("eta_hat_" + std::to_string(s + 1));
            w.value(r.frame_eta[s]);
        }
        w.key("ii_eigenvalues_h"); w.value(r.frame_ii_eigenvalues);
        w.key("r"); w.value(r.frame_r);
        w.key("delta"); w.value(r.frame_delta);
        w.end_object();
    }

    if (!r.normalized_surface.empty()) {
        w.key("normalized_surface");
        w.value(r.normalized_surface);
    }

    if (!r.diagnostics.empty()) {
        w.key("diagnostics");
        w.begin_object();
        for (const auto& [k, v] : r.diagnostics) {
            w.key(k);
            w.value(v);
        }
        w.end_object();
    }

    w.key("points_used"); w.value(static_cast<std::uint64_t>(r.points_used));
    w.key("rng_seed"); w.value(r.rng_seed);
    w.end_object();
    return w.str() + "\n";
}

std::string to_table(const Report& r) {
    std::ostringstream os;
    os << "command:  " << r.command << "\n";
    os << "surface:  " << r.surface_file << " (dim " << r.dim << ")\n";
    os << "rho:      " << r.rho << "\n";
    os << "outcome:  " << r.outcome << "\n";
    if (!r.message.empty()) os << "message:  " << r.message << "\n";
    if (r.has_classification) {
        os << "label:    " << r.label << "\n";
        os << "inertia:  (" << r.inertia.pos << ", " << r.inertia.neg << ", " << r.inertia.zero
           << ")\n";
        os << "residual: " << JsonWriter::fmt(r.residual) << "\n";
        os << "normalizer.a:     [";
        for (std::size_t i = 0; i < r.normalizer_a.size(); ++i)
            os << (i ? ", " : "") << JsonWriter::fmt(r.normalizer_a[i]);
        os << "]\n";
        os << "normalizer.omega: [";
        for (std::size_t i = 0; i < r.normalizer_omega.size(); ++i)
            os << (i ? ", " : "") << JsonWriter::fmt(r.normalizer_omega[i]);
        os << "]\n";
        os << "normalizer.q0:    [";
        for (std::size_t i = 0; i < r.normalizer_q0.size(); ++i)
            os << (i ? ", " : "") << JsonWriter::fmt(r.normalizer_q0[i]);
        os << "]\n";
    }
    for (const BatteryResult& b : r.batteries) {
        os << "battery " << b.name << ": "
           << (b.skipped ? "skipped" : (b.pass ? "pass" : "FAIL"));
        if (!b.skipped) os << "  (score " << JsonWriter::fmt(b.score) << ")";
        if (!b.note.empty()) os << "  [" << b.note << "]";
        os << "\n";
        for (const auto& [k, v] : b.metrics)
            os << "    " << k << " = " << JsonWriter::fmt(v) << "\n";
    }
    if (r.has_frame) {
        auto print_vec = [&os](const char* name, const std::vector<double>& v) {
            os << name << " [";
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << JsonWriter::fmt(v[i]);
            os << "]\n";
        };
        print_vec("point:   ", r.frame_point);
        print_vec("normal:  ", r.frame_normal);
        for (int s = 0; s < 3; ++s)
            print_vec(("eta_hat_" + std::to_string(s + 1) + ":").c_str(), r.frame_eta[s]);
        print_vec("II|H eigenvalues:", r.frame_ii_eigenvalues);
        print_vec("r:       ", r.frame_r);
        print_vec("delta (row-major):", r.frame_delta);
    }
    if (!r.normalized_surface.empty())
        os << "normalized surface:\n" << r.normalized_surface;
    if (!r.diagnostics.empty()) {
        os << "diagnostics:\n";
        for (const auto& [k, v] : r.diagnostics)
            os << "  " << k << " = " << JsonWriter::fmt(v) << "\n";
    }
    os << "points_used: " << r.points_used << "\n";
    os << "rng_seed:    " << r.rng_seed << "\n";
    return os.str();
}

void fill_classification(Report& report, const Classification& c) {
    report.has_classification = true;
    report.label = to_string(c.label);
    report.inertia = c.inertia;
    const QuatMatrix& a = c.normalizer.a;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const Quaternion& q = a(i, j);
            report.normalizer_a.insert(report.normalizer_a.end(), {q.t, q.x, q.y, q.z});
        }
    const Quaternion& w = c.normalizer.omega;
    report.normalizer_omega = {w.t, w.x, w.y, w.z};
    report.normalizer_q0 = c.normalizer.q0.coords();
    report.residual = c.residual;

    report.diagnostics.emplace_back("sp1_residual", c.sp1_max);
    report.diagnostics.emplace_back("constancy_dev", c.delta.constancy_dev);
    report.diagnostics.emplace_back("j_residual", c.delta.j_residual);
    report.diagnostics.emplace_back("S_mean", c.s_mean);
    report.diagnostics.emplace_back("S_spread", c.s_spread);
    report.diagnostics.emplace_back("mu_dev_max", c.mu_dev_max);
    report.diagnostics.emplace_back("fit_residual", c.fit_residual);
    report.points_used = c.points_used;
}

}  // namespace qcgeom
