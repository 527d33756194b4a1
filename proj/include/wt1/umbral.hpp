#pragma once

#include "qseries.hpp"
#include "weil.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#ifndef WT1_DEFAULT_DATA_DIR
#define WT1_DEFAULT_DATA_DIR "data"
#endif

namespace wt1 {

constexpr int kDataSchemaVersion = 1;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataDigestError : DataError {
    using DataError::DataError;
};

enum class Shade { None, Yellow, Orange };

inline std::string to_string(Shade s)
{
    switch (s) {
    case Shade::None: return "none";
    case Shade::Yellow: return "yellow";
    case Shade::Orange: return "orange";
    }
    return "?";
}

struct ClassRecord {
    std::string root_system;
    i64 m = 0;
    std::string cls;
    i64 n_g = 0, h_g = 0, N_g = 0;
    Shade shade = Shade::None;
};

struct CharacterTable {
    std::vector<std::string> classes;
    std::vector<std::string> power2, power3;
    std::vector<std::string> fs;
    std::vector<std::vector<i64>> chi;

    i64 group_order() const { return 12; }
    std::size_t index_of(const std::string& c) const
    {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i] == c) return i;
        throw std::out_of_range("unknown class " + c);
    }
};

struct CoefficientRow {
    i64 r = 0, D = 0;
    std::vector<i64> c;  // one per class, in character-table order
};

struct DecompositionRow {
    i64 r = 0, D = 0;
    std::vector<std::string> printed_columns;
    std::vector<i64> values;
};

struct UmbralDataSet {
    std::vector<ClassRecord> levels;
    CharacterTable chars;
    std::vector<CoefficientRow> coeffs;
    std::vector<DecompositionRow> decomps;
    std::map<std::string, std::string> digests;

    const CoefficientRow* find_coeff(i64 r, i64 D) const
    {
        for (const auto& row : coeffs)
            if (row.r == r && row.D == D) return &row;
        return nullptr;
    }
};

inline std::filesystem::path data_dir()
{
    if (const char* env = std::getenv("WT1_DATA_DIR"); env && *env) return env;
    return WT1_DEFAULT_DATA_DIR;
}

inline std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline std::vector<std::vector<std::string>> read_rows(const std::string& text, const std::string& file,
                                                       const std::vector<std::string>& header)
{
    std::istringstream is(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    if (!std::getline(is, line)) throw DataError(file + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto h = split_csv(line);
    if (!header.empty() && h != header) throw DataError(file + ": unexpected header");
    rows.push_back(h);
    for (int ln = 2; std::getline(is, line); ++ln) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != h.size())
            throw DataError(file + ":" + std::to_string(ln) + ": expected " + std::to_string(h.size()) + " fields");
        rows.push_back(std::move(f));
    }
    return rows;
}

inline i64 to_int(const std::string& s, const std::string& where)
{
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError(where + ": not an integer: '" + s + "'");
    }
}

}  // namespace detail

/// The shaded (X, class) pairs of the levels tables.
inline Shade expected_shade(const std::string& X, const std::string& cls)
{
    static const std::set<std::pair<std::string, std::string>> yellow{
        {"A2^12", "3B"}, {"A2^12", "6B"}, {"A2^12", "12A"}, {"D4^6", "3C"}, {"D4^6", "6C"}, {"E8^3", "3A"}};
    static const std::set<std::pair<std::string, std::string>> orange{{"A8^3", "3A"}, {"A8^3", "6A"}};
    if (yellow.count({X, cls})) return Shade::Yellow;
    if (orange.count({X, cls})) return Shade::Orange;
    return Shade::None;
}

inline std::vector<ClassRecord> parse_levels(const std::string& text, const std::string& file = "levels.csv")
{
    auto rows = detail::read_rows(text, file, {"root_system", "m", "class", "n_g", "h_g", "N_g", "exceptional"});
    std::vector<ClassRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        const std::string where = file + ":" + std::to_string(i + 1);
        ClassRecord c;
        c.root_system = f[0];
        c.m = detail::to_int(f[1], where);
        c.cls = f[2];
        c.n_g = detail::to_int(f[3], where);
        c.h_g = detail::to_int(f[4], where);
        c.N_g = detail::to_int(f[5], where);
        if (f[6] == "none") c.shade = Shade::None;
        else if (f[6] == "yellow") c.shade = Shade::Yellow;
        else if (f[6] == "orange") c.shade = Shade::Orange;
        else throw DataError(where + ": bad exceptional flag '" + f[6] + "'");
        if (c.m < 1 || c.n_g < 1 || c.h_g < 1 || c.N_g < 1) throw DataError(where + ": non-positive entry");
        // N_g = n_g h_g on every printed row except D12^2 2A, which prints N_g = n_g = h_g = 2
        if (c.N_g % lcm(c.n_g, c.h_g) || (c.n_g * c.h_g) % c.N_g)
            throw DataError(where + ": level " + std::to_string(c.N_g) + " inconsistent with n|h = " +
                            std::to_string(c.n_g) + "|" + std::to_string(c.h_g));
        if (c.shade != expected_shade(c.root_system, c.cls))
            throw DataError(where + ": exceptional flag does not match the shaded classes");
        out.push_back(std::move(c));
    }
    return out;
}

/// |class(g)| = |G| / sum_i |chi_i(g)|^2
inline std::vector<i64> class_sizes(const CharacterTable& t)
{
    std::vector<i64> sizes;
    i64 total = 0;
    for (std::size_t j = 0; j < t.classes.size(); ++j) {
        i64 s = 0;
        for (const auto& row : t.chi) s += row[j] * row[j];
        if (s == 0 || t.group_order() % s) throw DataError("class_sizes: non-integral size for " + t.classes[j]);
        sizes.push_back(t.group_order() / s);
        total += sizes.back();
    }
    if (total != t.group_order()) throw DataError("class_sizes: sizes do not sum to |G|");
    return sizes;
}

inline void validate_character_table(const CharacterTable& t)
{
    const auto sizes = class_sizes(t);
    for (std::size_t i = 0; i < t.chi.size(); ++i)
        for (std::size_t j = 0; j < t.chi.size(); ++j) {
            i64 s = 0;
            for (std::size_t c = 0; c < t.classes.size(); ++c) s += sizes[c] * t.chi[i][c] * t.chi[j][c];
            if (s != (i == j ? t.group_order() : 0))
                throw DataError("character table: rows " + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                " fail orthogonality");
        }
    for (std::size_t a = 0; a < t.classes.size(); ++a)
        for (std::size_t b = 0; b < t.classes.size(); ++b) {
            i64 s = 0;
            for (const auto& row : t.chi) s += row[a] * row[b];
            if (a != b && s != 0) throw DataError("character table: columns fail orthogonality");
        }
    std::set<std::string> names(t.classes.begin(), t.classes.end());
    for (const auto* pm : {&t.power2, &t.power3})
        for (const auto& c : *pm)
            if (!names.count(c)) throw DataError("character table: power map names unknown class " + c);
}

inline CharacterTable parse_characters(const std::string& text, const std::string& file = "characters_9.csv")
{
    auto rows = detail::read_rows(text, file, {});
    const auto& h = rows[0];
    if (h.size() < 3 || h[0] != "row" || h[1] != "FS") throw DataError(file + ": unexpected header");
    CharacterTable t;
    t.classes.assign(h.begin() + 2, h.end());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        const std::string where = file + ":" + std::to_string(i + 1);
        std::vector<std::string> rest(f.begin() + 2, f.end());
        if (f[0] == "power_2") t.power2 = rest;
        else if (f[0] == "power_3") t.power3 = rest;
        else if (f[0] == "chi" + std::to_string(t.chi.size() + 1)) {
            std::vector<i64> v;
            for (const auto& s : rest) v.push_back(detail::to_int(s, where));
            t.chi.push_back(std::move(v));
            t.fs.push_back(f[1]);
        } else
            throw DataError(where + ": unexpected row label " + f[0]);
    }
    if (t.chi.size() != t.classes.size()) throw DataError(file + ": table is not square");
    validate_character_table(t);
    return t;
}

/// Grading of the coefficient tables: the label D of a component-r row satisfies D = -r^2 mod 36.
inline bool grading_holds(i64 r, i64 D) { return mod(D + r * r, 36) == 0; }

inline std::vector<CoefficientRow> parse_coefficients(const std::string& text, const CharacterTable& t,
                                                      const std::string& file = "coefficients_9.csv")
{
    std::vector<std::string> header{"r", "D"};
    header.insert(header.end(), t.classes.begin(), t.classes.end());
    auto rows = detail::read_rows(text, file, header);
    std::vector<CoefficientRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        const std::string where = file + ":" + std::to_string(i + 1);
        CoefficientRow row;
        row.r = detail::to_int(f[0], where);
        row.D = detail::to_int(f[1], where);
        if (row.r < 1 || row.r > 8) throw DataError(where + ": component out of range");
        if (!grading_holds(row.r, row.D)) throw DataError(where + ": D violates the mod-36 grading");
        for (std::size_t c = 2; c < f.size(); ++c) row.c.push_back(detail::to_int(f[c], where));
        out.push_back(std::move(row));
    }
    return out;
}

inline std::vector<DecompositionRow> parse_decompositions(const std::string& text,
                                                          const std::string& file = "decompositions_9.csv")
{
    auto rows = detail::read_rows(text, file, {"r", "D", "printed_columns", "m_a", "m_b", "m_c"});
    std::vector<DecompositionRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        const std::string where = file + ":" + std::to_string(i + 1);
        DecompositionRow row;
        row.r = detail::to_int(f[0], where);
        row.D = detail::to_int(f[1], where);
        std::istringstream cols(f[2]);
        for (std::string c; std::getline(cols, c, ';');) row.printed_columns.push_back(c);
        for (std::size_t c = 3; c < 6; ++c) row.values.push_back(detail::to_int(f[c], where));
        out.push_back(std::move(row));
    }
    return out;
}

inline const std::vector<std::string>& data_files()
{
    static const std::vector<std::string> files{"levels.csv", "characters_9.csv", "coefficients_9.csv",
                                                "decompositions_9.csv"};
    return files;
}

/// Parses MANIFEST.sha256 (sha256sum format).
inline std::map<std::string, std::string> read_manifest(const std::filesystem::path& dir)
{
    std::map<std::string, std::string> m;
    std::istringstream is(read_file(dir / "MANIFEST.sha256"));
    for (std::string line; std::getline(is, line);) {
        if (line.empty()) continue;
        auto sp = line.find("  ");
        if (sp == std::string::npos || sp != 64) throw DataError("MANIFEST.sha256: malformed line");
        m[line.substr(sp + 2)] = line.substr(0, sp);
    }
    return m;
}

inline UmbralDataSet load_dataset(const std::filesystem::path& dir = data_dir(), bool verify_digests = true)
{
    UmbralDataSet ds;
    std::map<std::string, std::string> text;
    std::map<std::string, std::string> manifest;
    if (verify_digests) manifest = read_manifest(dir);
    for (const auto& f : data_files()) {
        text[f] = read_file(dir / f);
        ds.digests[f] = sha256_hex(text[f]);
        if (verify_digests) {
            auto it = manifest.find(f);
            if (it == manifest.end()) throw DataDigestError(f + ": no digest in manifest");
            if (it->second != ds.digests[f]) throw DataDigestError(f + ": content digest mismatch");
        }
    }
    ds.levels = parse_levels(text["levels.csv"]);
    ds.chars = parse_characters(text["characters_9.csv"]);
    ds.coeffs = parse_coefficients(text["coefficients_9.csv"], ds.chars);
    ds.decomps = parse_decompositions(text["decompositions_9.csv"]);
    return ds;
}

/// m_i = |G|^{-1} sum_c |c| chi_i(c) coeff_c(r, D), over chi_1..chi_6.
inline std::vector<Rat> decompose_multiplicities(const UmbralDataSet& ds, i64 r, i64 D)
{
    const auto* row = ds.find_coeff(r, D);
    if (!row) throw std::out_of_range("no coefficient row for r = " + std::to_string(r) + ", D = " + std::to_string(D));
    const auto sizes = class_sizes(ds.chars);
    std::vector<Rat> m;
    for (const auto& chi : ds.chars.chi) {
        i64 s = 0;
        for (std::size_t c = 0; c < sizes.size(); ++c) s += sizes[c] * chi[c] * row->c[c];
        m.emplace_back(s, ds.chars.group_order());
    }
    return m;
}

/// Characters supported on component r: chi(2A) = chi(1A) for odd r, chi(2A) = -chi(1A) for even r.
inline std::vector<std::size_t> support_characters(const CharacterTable& t, i64 r)
{
    const std::size_t e = t.index_of("1A"), z = t.index_of("2A");
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < t.chi.size(); ++i)
        if (t.chi[i][z] == (r % 2 ? t.chi[i][e] : -t.chi[i][e])) v.push_back(i);
    return v;
}

struct CheckReport {
    bool ok = true;
    std::vector<std::string> issues;
    i64 checked = 0;

    void fail(std::string s)
    {
        ok = false;
        issues.push_back(std::move(s));
    }
};

/**
 * Recomputes every decomposition row from the coefficient and character tables.
 * The printed three columns are matched positionally to the support characters.
 */
inline CheckReport verify_decompositions(const UmbralDataSet& ds)
{
    CheckReport rep;
    for (const auto& row : ds.decomps) {
        const std::string tag = "r=" + std::to_string(row.r) + " D=" + std::to_string(row.D);
        if (!ds.find_coeff(row.r, row.D)) {
            rep.fail(tag + ": no coefficient row");
            continue;
        }
        auto m = decompose_multiplicities(ds, row.r, row.D);
        auto supp = support_characters(ds.chars, row.r);
        ++rep.checked;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i].denominator() != 1) rep.fail(tag + ": non-integral multiplicity of chi" + std::to_string(i + 1));
            if (row.D > 0 && m[i].numerator() < 0) rep.fail(tag + ": negative multiplicity at D > 0");
            bool in_support = std::find(supp.begin(), supp.end(), i) != supp.end();
            if (!in_support && m[i].numerator() != 0) rep.fail(tag + ": chi" + std::to_string(i + 1) + " outside the support");
        }
        if (supp.size() != row.values.size()) {
            rep.fail(tag + ": support size differs from printed columns");
            continue;
        }
        for (std::size_t k = 0; k < supp.size(); ++k)
            if (m[supp[k]] != Rat(row.values[k]))
                rep.fail(tag + ": chi" + std::to_string(supp[k] + 1) + " computed " + to_string(m[supp[k]]) +
                         ", printed " + std::to_string(row.values[k]));
    }
    return rep;
}

/// Sign, grading and polar-term audit of the coefficient tables.
inline CheckReport coefficient_parity_audit(const UmbralDataSet& ds)
{
    CheckReport rep;
    const std::size_t e = ds.chars.index_of("1A");
    bool polar = false;
    for (const auto& row : ds.coeffs) {
        const std::string tag = "r=" + std::to_string(row.r) + " D=" + std::to_string(row.D);
        ++rep.checked;
        if (!grading_holds(row.r, row.D)) rep.fail(tag + ": grading");
        if (row.D > 0 && row.c[e] < 0) rep.fail(tag + ": negative 1A coefficient");
        if (row.D < 0) {
            if (row.r == 1 && row.D == -1 && row.c[e] == -2) polar = true;
            else rep.fail(tag + ": unexpected polar entry");
        }
    }
    if (!polar) rep.fail("missing polar entry -2 at r=1 D=-1");
    return rep;
}

/// Theta-series correction t_{g,r} for g in {3A, 6A}.
inline Series theta_correction(const std::string& g, i64 r, Rat order)
{
    if (g != "3A" && g != "6A") throw std::invalid_argument("theta_correction: class must be 3A or 6A");
    const i64 rr = mod(r, 18);
    const int s6 = g == "3A" ? 1 : -1;
    if (rr == 3) return -theta_expansion(3, 3, order).specialize_y1();
    if (rr == 15) return theta_expansion(3, 3, order).specialize_y1();
    if (rr == 6) return Coeff(s6) * theta_expansion(3, 0, order).specialize_y1();
    if (rr == 12) return Coeff(-s6) * theta_expansion(3, 0, order).specialize_y1();
    return Series(36, order);
}

/// Compares the theta coefficients of xi^(9)_g against sign * t_g componentwise.
inline CheckReport verify_xi9_consistency(const std::string& g, Rat order, int sign = 1)
{
    if (order < Rat(2)) throw std::invalid_argument("verify_xi9_consistency: order must be at least 2");
    CheckReport rep;
    auto h = theta_decompose(explicit_form(g == "3A" ? FormName::Xi9_3A : FormName::Xi9_6A, order), 9);
    for (const auto& [r, comp] : h) {
        Series t = Coeff(sign) * theta_correction(g, r, comp.order());
        ++rep.checked;
        if (!agree(comp, t)) {
            auto diff = comp - t;
            const auto& [k, c] = *diff.terms().begin();
            std::ostringstream os;
            os << g << " r=" << r << ": first difference at q^" << to_string(diff.exponent(k)) << " (" << coeff_string(c)
               << ")";
            rep.fail(os.str());
        }
    }
    return rep;
}

/// T, (1,0;3,1) and -I: generates the image of Gamma_0(3) in SL_2(Z/36).
inline std::vector<Sl2Word> gamma0_3_generators()
{
    return {Sl2Word::T(), Sl2Word(std::vector<i64>{0, -3, 0, 0, 0}), Sl2Word::S(2)};
}

/// Closure of the words' reductions mod Q under multiplication.
inline i64 generated_order(const std::vector<Sl2Word>& gens, i64 Q, i64 limit = 1000000)
{
    std::vector<Sl2Mod> gm;
    for (const auto& w : gens) gm.push_back(Sl2Mod::reduce(w.matrix(), Q));
    std::set<i64> seen;
    std::vector<Sl2Mod> frontier{Sl2Mod::identity(Q)};
    seen.insert(frontier[0].key());
    while (!frontier.empty()) {
        std::vector<Sl2Mod> next;
        for (const auto& x : frontier)
            for (const auto& g : gm) {
                Sl2Mod y = x * g;
                if (seen.insert(y.key()).second) next.push_back(y);
            }
        if (static_cast<i64>(seen.size()) > limit) throw ResourceLimit("generated_order: limit exceeded");
        frontier = std::move(next);
    }
    return static_cast<i64>(seen.size());
}

/**
 * rho_{D_9}(w) has no entries coupling residues = 0 mod 3 with residues != 0 mod 3,
 * for every word w in Gamma_0(3).
 */
inline bool block_structure_check(const std::vector<Sl2Word>& words)
{
    const QuadSpace A = QuadSpace::D(9);
    for (const auto& w : words) {
        if (mod(w.matrix().c, 3) != 0) throw std::invalid_argument("block_structure_check: word not in Gamma_0(3)");
        CycMatrix M = weil_matrix(A, w);
        for (i64 x = 0; x < A.size(); ++x)
            for (i64 y = 0; y < A.size(); ++y)
                if ((x % 3 == 0) != (y % 3 == 0) && !M.at(x, y).is_zero()) return false;
    }
    return true;
}

}  // namespace wt1
