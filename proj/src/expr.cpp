#include "qcgeom/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qcgeom/errors.hpp"

namespace qcgeom {

namespace {

ExprPtr make_node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

const char* comp_name(int comp) {
    switch (comp) {
        case 0: return "re";
        case 1: return "imi";
        case 2: return "imj";
        default: return "imk";
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ExprPtr Expr::constant(double v) {
    Expr e{};
    e.kind = Kind::Constant;
    e.cval = v;
    return make_node(e);
}

ExprPtr Expr::coord(std::size_t slot, int comp) {
    Expr e{};
    e.kind = Kind::Coord;
    e.slot = slot;
    e.comp = comp;
    return make_node(e);
}

ExprPtr Expr::normq(std::size_t slot) {
    Expr e{};
    e.kind = Kind::NormQ;
    e.slot = slot;
    return make_node(e);
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
    Expr e{};
    e.kind = Kind::Add;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return make_node(e);
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) {
    Expr e{};
    e.kind = Kind::Sub;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return make_node(e);
}

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
    Expr e{};
    e.kind = Kind::Mul;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return make_node(e);
}

ExprPtr Expr::div(ExprPtr a, ExprPtr b) {
    Expr e{};
    e.kind = Kind::Div;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return make_node(e);
}

ExprPtr Expr::neg(ExprPtr a) {
    // fold negated constants so the canonical printer round-trips
    if (a->kind == Kind::Constant) return constant(-a->cval);
    Expr e{};
    e.kind = Kind::Neg;
    e.lhs = std::move(a);
    return make_node(e);
}

ExprPtr Expr::pow(ExprPtr a, long long k) {
    Expr e{};
    e.kind = Kind::Pow;
    e.exponent = k;
    e.lhs = std::move(a);
    return make_node(e);
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Constant: return a.cval == b.cval;
        case Expr::Kind::Coord: return a.slot == b.slot && a.comp == b.comp;
        case Expr::Kind::NormQ: return a.slot == b.slot;
        case Expr::Kind::Neg: return expr_equal(*a.lhs, *b.lhs);
        case Expr::Kind::Pow: return a.exponent == b.exponent && expr_equal(*a.lhs, *b.lhs);
        default: return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    }
}

std::string print_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant: return format_double(e.cval);
        case Expr::Kind::Coord:
            return std::string(comp_name(e.comp)) + "(" + std::to_string(e.slot) + ")";
        case Expr::Kind::NormQ: return "normq(" + std::to_string(e.slot) + ")";
        case Expr::Kind::Add: return "(" + print_expr(*e.lhs) + " + " + print_expr(*e.rhs) + ")";
        case Expr::Kind::Sub: return "(" + print_expr(*e.lhs) + " - " + print_expr(*e.rhs) + ")";
        case Expr::Kind::Mul: return "(" + print_expr(*e.lhs) + " * " + print_expr(*e.rhs) + ")";
        case Expr::Kind::Div: return "(" + print_expr(*e.lhs) + " / " + print_expr(*e.rhs) + ")";
        case Expr::Kind::Neg: return "(-" + print_expr(*e.lhs) + ")";
        case Expr::Kind::Pow:
            return "(" + print_expr(*e.lhs) + "^" + std::to_string(e.exponent) + ")";
    }
    return {};
}

namespace {

// Recursive-descent expression parser over a single line.
class ExprParser {
public:
    ExprParser(const std::string& line, int line_no, std::size_t dim)
        : line_(line), line_no_(line_no), dim_(dim) {}

    ExprPtr parse(std::size_t start_pos) {
        pos_ = start_pos;
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ < line_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_no_, static_cast<int>(pos_) + 1, msg);
    }

    void skip_ws() {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= line_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < line_.size() ? line_[pos_] : '\0';
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (true) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                e = Expr::add(e, parse_term());
            } else if (c == '-') {
                ++pos_;
                e = Expr::sub(e, parse_term());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        while (true) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                e = Expr::mul(e, parse_unary());
            } else if (c == '/') {
                ++pos_;
                e = Expr::div(e, parse_unary());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_unary() {
        if (peek() == '-') {
            ++pos_;
            return Expr::neg(parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr e = parse_primary();
        while (peek() == '^') {
            ++pos_;
            e = Expr::pow(e, parse_integer("expected integer exponent after '^'"));
        }
        return e;
    }

    long long parse_integer(const char* what) {
        skip_ws();
        bool negative = false;
        if (pos_ < line_.size() && line_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        if (pos_ >= line_.size() || !std::isdigit(static_cast<unsigned char>(line_[pos_])))
            fail(what);
        long long v = 0;
        while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])))
            v = v * 10 + (line_[pos_++] - '0');
        return negative ? -v : v;
    }

    ExprPtr parse_primary() {
        if (at_end()) fail("expected a number, coordinate accessor, '(' or '-'");
        const char c = line_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_call();
        fail("expected a number, coordinate accessor, '(' or '-'");
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
        if (pos_ < line_.size() && line_[pos_] == '.') {
            ++pos_;
            while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])))
                ++pos_;
        }
        if (pos_ < line_.size() && (line_[pos_] == 'e' || line_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < line_.size() && (line_[pos_] == '+' || line_[pos_] == '-')) ++pos_;
            if (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
                while (pos_ < line_.size() &&
                       std::isdigit(static_cast<unsigned char>(line_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' belongs to something else; not a valid exponent
            }
        }
        const std::string tok = line_.substr(start, pos_ - start);
        try {
            return Expr::constant(std::stod(tok));
        } catch (const std::exception&) {
            pos_ = start;
            fail("malformed number '" + tok + "'");
        }
    }

    ExprPtr parse_call() {
        const std::size_t start = pos_;
        while (pos_ < line_.size() &&
               (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_'))
            ++pos_;
        const std::string name = line_.substr(start, pos_ - start);
        int comp = -1;
        bool is_normq = false;
        if (name == "re") comp = 0;
        else if (name == "imi") comp = 1;
        else if (name == "imj") comp = 2;
        else if (name == "imk") comp = 3;
        else if (name == "normq") is_normq = true;
        else {
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        if (peek() != '(') fail("expected '(' after '" + name + "'");
        ++pos_;
        skip_ws();
        const std::size_t slot_pos = pos_;
        const long long slot = parse_integer("expected slot index");
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        if (slot < 0 || static_cast<std::size_t>(slot) >= dim_) {
            pos_ = slot_pos;
            fail("slot index " + std::to_string(slot) + " out of range for dim " +
                 std::to_string(dim_));
        }
        return is_normq ? Expr::normq(static_cast<std::size_t>(slot))
                        : Expr::coord(static_cast<std::size_t>(slot), comp);
    }

    const std::string& line_;
    int line_no_;
    std::size_t dim_;
    std::size_t pos_ = 0;
};

struct KeyLine {
    int line_no;
    std::string key;
    std::size_t value_pos;  // 0-based column of the value
    std::string line;
};

std::vector<double> parse_real_list(const KeyLine& kl) {
    std::vector<double> vals;
    std::size_t pos = kl.value_pos;
    const std::string& line = kl.line;
    while (true) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos >= line.size()) break;
        std::size_t consumed = 0;
        try {
            vals.push_back(std::stod(line.substr(pos), &consumed));
        } catch (const std::exception&) {
            throw ParseError(kl.line_no, static_cast<int>(pos) + 1, "expected a real number");
        }
        pos += consumed;
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos < line.size()) {
            if (line[pos] != ',')
                throw ParseError(kl.line_no, static_cast<int>(pos) + 1, "expected ','");
            ++pos;
        }
    }
    return vals;
}

}  // namespace

SurfaceSpec parse_surface(const std::string& text) {
    std::vector<KeyLine> entries;
    {
        std::istringstream in(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = raw;
            if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
            std::size_t pos = 0;
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
            if (pos >= line.size()) continue;
            const std::size_t key_start = pos;
            while (pos < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_'))
                ++pos;
            const std::string key = line.substr(key_start, pos - key_start);
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
            if (key.empty() || pos >= line.size() || line[pos] != '=')
                throw ParseError(line_no, static_cast<int>(pos) + 1, "expected 'key = value'");
            ++pos;
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
            entries.push_back({line_no, key, pos, line});
        }
    }

    SurfaceSpec spec;
    bool have_dim = false, have_rho = false, have_center = false;
    for (const KeyLine& kl : entries) {
        if (kl.key == "dim") {
            std::size_t consumed = 0;
            long long d = 0;
            try {
                d = std::stoll(kl.line.substr(kl.value_pos), &consumed);
            } catch (const std::exception&) {
                throw ParseError(kl.line_no, static_cast<int>(kl.value_pos) + 1,
                                 "expected integer dimension");
            }
            if (d < 2)
                throw ParseError(kl.line_no, static_cast<int>(kl.value_pos) + 1,
                                 "dim must be at least 2 (ambient H^{n+1} with n >= 1)");
            spec.dim = static_cast<std::size_t>(d);
            have_dim = true;
        } else if (kl.key == "rho") {
            if (!have_dim)
                throw ParseError(kl.line_no, 1, "'dim = <n+1>' must appear before 'rho'");
            ExprParser p(kl.line, kl.line_no, spec.dim);
            spec.rho = p.parse(kl.value_pos);
            have_rho = true;
        } else if (kl.key == "box_center") {
            if (!have_dim)
                throw ParseError(kl.line_no, 1, "'dim = <n+1>' must appear before 'box_center'");
            const std::vector<double> vals = parse_real_list(kl);
            if (vals.size() != 4 * spec.dim)
                throw ParseError(kl.line_no, static_cast<int>(kl.value_pos) + 1,
                                 "box_center needs " + std::to_string(4 * spec.dim) +
                                     " comma-separated reals");
            spec.box_center = QVector(vals);
            have_center = true;
        } else if (kl.key == "box_halfwidth") {
            try {
                spec.box_halfwidth = std::stod(kl.line.substr(kl.value_pos));
            } catch (const std::exception&) {
                throw ParseError(kl.line_no, static_cast<int>(kl.value_pos) + 1,
                                 "expected a real number");
            }
            if (!(spec.box_halfwidth > 0))
                throw ParseError(kl.line_no, static_cast<int>(kl.value_pos) + 1,
                                 "box_halfwidth must be positive");
        } else {
            throw ParseError(kl.line_no, 1, "unknown key '" + kl.key + "'");
        }
    }
    if (!have_dim) throw ParseError(1, 1, "missing 'dim = <n+1>' line");
    if (!have_rho) throw ParseError(1, 1, "missing 'rho = <expr>' line");
    if (!have_center) spec.box_center = QVector(spec.dim);
    return spec;
}

std::string surface_to_text(const SurfaceSpec& spec) {
    std::string out = "dim = " + std::to_string(spec.dim) + "\n";
    out += "rho = " + print_expr(*spec.rho) + "\n";
    out += "box_center = ";
    for (std::size_t i = 0; i < spec.box_center.real_dim(); ++i) {
        if (i) out += ", ";
        out += format_double(spec.box_center[i]);
    }
    out += "\nbox_halfwidth = " + format_double(spec.box_halfwidth) + "\n";
    return out;
}

RealMatrix right_mul_real(const Quaternion& q, std::size_t quat_dim) {
    RealMatrix m(4 * quat_dim, 4 * quat_dim);
    const double blk[4][4] = {{q.t, -q.x, -q.y, -q.z},
                              {q.x, q.t, q.z, -q.y},
                              {q.y, -q.z, q.t, q.x},
                              {q.z, q.y, -q.x, q.t}};
    for (std::size_t a = 0; a < quat_dim; ++a)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m(4 * a + r, 4 * a + c) = blk[r][c];
    return m;
}

RealMatrix affine_linear_real(const AffineMap& f) {
    return right_mul_real(f.omega.conj(), f.a.dim()) * f.a.to_real();
}

namespace {

ExprPtr linear_form(const std::vector<double>& coeffs, double constant) {
    ExprPtr acc;
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        if (coeffs[c] == 0.0) continue;
        ExprPtr term = Expr::mul(Expr::constant(coeffs[c]),
                                 Expr::coord(c / 4, static_cast<int>(c % 4)));
        acc = acc ? Expr::add(acc, term) : term;
    }
    if (constant != 0.0 || !acc) {
        ExprPtr k = Expr::constant(constant);
        acc = acc ? Expr::add(acc, k) : k;
    }
    return acc;
}

ExprPtr substitute(const Expr& e, const std::vector<ExprPtr>& coord_subst) {
    switch (e.kind) {
        case Expr::Kind::Constant: return Expr::constant(e.cval);
        case Expr::Kind::Coord: return coord_subst[4 * e.slot + e.comp];
        case Expr::Kind::NormQ: {
            ExprPtr acc;
            for (int m = 0; m < 4; ++m) {
                ExprPtr sq = Expr::pow(coord_subst[4 * e.slot + m], 2);
                acc = acc ? Expr::add(acc, sq) : sq;
            }
            return acc;
        }
        case Expr::Kind::Add:
            return Expr::add(substitute(*e.lhs, coord_subst), substitute(*e.rhs, coord_subst));
        case Expr::Kind::Sub:
            return Expr::sub(substitute(*e.lhs, coord_subst), substitute(*e.rhs, coord_subst));
        case Expr::Kind::Mul:
            return Expr::mul(substitute(*e.lhs, coord_subst), substitute(*e.rhs, coord_subst));
        case Expr::Kind::Div:
            return Expr::div(substitute(*e.lhs, coord_subst), substitute(*e.rhs, coord_subst));
        case Expr::Kind::Neg: return Expr::neg(substitute(*e.lhs, coord_subst));
        case Expr::Kind::Pow: return Expr::pow(substitute(*e.lhs, coord_subst), e.exponent);
    }
    return nullptr;
}

}  // namespace

SurfaceSpec transform_surface(const SurfaceSpec& spec, const AffineMap& f) {
    if (f.a.dim() != spec.dim)
        throw DimensionMismatch("transform_surface: affine map dimension mismatch");
    const AffineMap g = f.inverse();
    const RealMatrix t = affine_linear_real(g);
    const std::size_t rd = spec.real_dim();

    std::vector<ExprPtr> subst(rd);
    for (std::size_t r = 0; r < rd; ++r) {
        std::vector<double> row(rd);
        for (std::size_t c = 0; c < rd; ++c) row[c] = t(r, c);
        subst[r] = linear_form(row, g.q0[r]);
    }

    SurfaceSpec out;
    out.dim = spec.dim;
    out.rho = substitute(*spec.rho, subst);
    out.box_center = affine_apply(f, spec.box_center);
    // conservative spectral-norm bound keeps the image surface inside the box
    double linf = 0.0;
    const RealMatrix lin = affine_linear_real(f);
    for (std::size_t i = 0; i < rd; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < rd; ++j) row += std::abs(lin(i, j));
        linf = std::max(linf, row);
    }
    out.box_halfwidth = spec.box_halfwidth * (linf > 0 ? linf : 1.0);
    return out;
}

}  // namespace qcgeom
