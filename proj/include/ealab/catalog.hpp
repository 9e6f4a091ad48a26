#pragma once

#include "ealab/realizations.hpp"
#include "ealab/serialize.hpp"

namespace ealab {

/// Built-in examples: split simple, the affine table rows, the untwisted
/// toroidal case and the quantum-torus cases of nullity 2.
struct CatalogEntry {
    std::string name;
    std::string description;
    bool generic_marker = false;  // needs the marker field
};

inline std::vector<CatalogEntry> catalog_entries() {
    return {
        {"sl3", "split simple sl_3, nullity 0", false},
        {"sl4", "split simple sl_4, nullity 0", false},
        {"loop-sl2", "untwisted loop algebra of sl_2 with its central extension", false},
        {"affine-sl3-untwisted", "sl_3 over 1-variable Laurent, D = F d, nullity 1", false},
        {"affine-a2-twisted", "order-2 twisted loop of sl_3, quotient BC_1, nullity 1", false},
        {"affine-a3-twisted", "order-2 twisted loop of sl_4 (symplectic), quotient C_2", false},
        {"affine-a4-twisted", "order-2 twisted loop of sl_5, quotient BC_2", false},
        {"toroidal-sl3-n2", "sl_3 over 2-variable Laurent, D = degree derivations, nullity 2",
         false},
        {"sl3-q3", "sl_3 over the quantum torus at a primitive 3rd root, nullity 2", false},
        {"sl3-qgeneric", "sl_3 over the quantum torus at the generic marker, nullity 2", true},
    };
}

/// Instantiated example over the field F: the centreless algebra plus the
/// derivation choice for the full construction.
template <class F>
struct CatalogInstance {
    std::string name;
    GradedHandle<F> L;
    DerivationSpace D;
    bool is_loop_like = false;          // standard cocycles make sense
    bool has_quantum_matrix = false;    // torus centre cross-check available
    Lattice torus_centre{0};
    std::optional<TwistedLoopData> loop_data;  // only for Cyc instances
};

inline CatalogInstance<Cyc> make_catalog_cyc(std::string const& name) {
    CatalogInstance<Cyc> inst;
    inst.name = name;
    if (name == "sl3" || name == "sl4") {
        std::size_t N = (name == "sl3") ? 3 : 4;
        inst.L = sl_torus<Cyc>(N, AssocTorus<Cyc>::laurent(0));
        inst.D = DerivationSpace::zero(0);
        return inst;
    }
    if (name == "loop-sl2") {
        auto tw = twisted_loop(2, FiniteOrderAut::identity(2));
        inst.L = tw.handle;
        inst.loop_data = std::move(tw);
        inst.D = DerivationSpace::degree_only(1);
        inst.is_loop_like = true;
        return inst;
    }
    if (name == "affine-sl3-untwisted") {
        inst.L = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(1));
        inst.D = DerivationSpace::degree_only(1);
        inst.is_loop_like = true;
        return inst;
    }
    if (name == "affine-a2-twisted") {
        auto tw = twisted_loop(3, FiniteOrderAut::neg_transpose(Mat<Cyc>::identity(3)));
        inst.L = tw.handle;
        inst.loop_data = std::move(tw);
        inst.D = DerivationSpace::degree_only(1);
        inst.is_loop_like = true;
        return inst;
    }
    if (name == "affine-a3-twisted") {
        Mat<Cyc> J(4, 4);
        J(0, 3) = Cyc::one();
        J(1, 2) = Cyc::one();
        J(2, 1) = -Cyc::one();
        J(3, 0) = -Cyc::one();
        auto tw = twisted_loop(4, FiniteOrderAut::neg_transpose(J));
        inst.L = tw.handle;
        inst.loop_data = std::move(tw);
        inst.D = DerivationSpace::degree_only(1);
        inst.is_loop_like = true;
        return inst;
    }
    if (name == "affine-a4-twisted") {
        auto tw = twisted_loop(5, FiniteOrderAut::neg_transpose(Mat<Cyc>::identity(5)));
        inst.L = tw.handle;
        inst.loop_data = std::move(tw);
        inst.D = DerivationSpace::degree_only(1);
        inst.is_loop_like = true;
        return inst;
    }
    if (name == "toroidal-sl3-n2") {
        inst.L = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(2));
        inst.D = DerivationSpace::degree_only(2);
        inst.is_loop_like = true;
        return inst;
    }
    if (name == "sl3-q3") {
        auto q = QuantumMatrix<Cyc>::rank2(Cyc::primitive_root(3));
        inst.torus_centre = torus_center_support(q);
        inst.has_quantum_matrix = true;
        inst.L = sl_torus<Cyc>(3, AssocTorus<Cyc>(q));
        inst.D = DerivationSpace::degree_only(2);
        return inst;
    }
    throw EalabError("unknown example: " + name);
}

inline CatalogInstance<QRat> make_catalog_generic(std::string const& name) {
    CatalogInstance<QRat> inst;
    inst.name = name;
    if (name == "sl3-qgeneric") {
        auto q = QuantumMatrix<QRat>::rank2(QRat::marker());
        inst.torus_centre = torus_center_support(q);
        inst.has_quantum_matrix = true;
        inst.L = sl_torus<QRat>(3, AssocTorus<QRat>(q));
        inst.D = DerivationSpace::degree_only(2);
        return inst;
    }
    throw EalabError("unknown generic example: " + name);
}

// ---------------------------------------------------------------------------
// user spec files

template <class F>
GradedHandle<F> realization_from_json(Json const& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "sl-torus") {
        std::size_t N = j.at("N").get<std::size_t>();
        auto const& qj = j.at("q");
        std::size_t n = qj.at("n").get<std::size_t>();
        std::vector<std::vector<F>> entries(n, std::vector<F>(n, F(1)));
        auto const& rows = qj.at("q");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                auto const& cell = rows.at(i).at(k);
                if (cell.is_string() && cell.get<std::string>() == "marker")
                    entries[i][k] = ScalarTraits<F>::marker_pow(1);
                else if (cell.is_string() && cell.get<std::string>() == "marker^-1")
                    entries[i][k] = ScalarTraits<F>::marker_pow(-1);
                else
                    entries[i][k] = ScalarTraits<F>::from_cyc(cyc_from_json(cell));
            }
        return sl_torus<F>(N, AssocTorus<F>(QuantumMatrix<F>(n, std::move(entries))));
    }
    if constexpr (std::is_same_v<F, Cyc>) {
        if (kind == "twisted-loop") {
            std::size_t N = j.at("N").get<std::size_t>();
            auto const& aj = j.at("aut");
            std::string akind = aj.at("kind").get<std::string>();
            if (akind == "identity") return twisted_loop(N, FiniteOrderAut::identity(N)).handle;
            CMat m(N, N);
            auto const& rows = aj.at("matrix");
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t k = 0; k < N; ++k) m(i, k) = cyc_from_json(rows.at(i).at(k));
            unsigned order = aj.at("order").get<unsigned>();
            if (akind == "inner") return twisted_loop(N, FiniteOrderAut::inner(m, order)).handle;
            if (akind == "neg-transpose")
                return twisted_loop(N, FiniteOrderAut::neg_transpose(m, order)).handle;
            throw EalabError("unknown automorphism kind: " + akind);
        }
    }
    throw EalabError("unknown realization kind: " + kind);
}

inline DerivationSpace derivations_from_json(Json const& j, std::size_t n, Lattice gamma) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "zero") return DerivationSpace::zero(n);
        if (s == "degree") return DerivationSpace::degree_only(n);
        if (s == "full") return DerivationSpace::full(n, std::move(gamma));
        throw EalabError("unknown derivation choice: " + s);
    }
    // custom list: [{"gamma": [...], "thetas": [["p/q", ...], ...]}, ...]
    std::map<IntVec, std::vector<DegreeMap>> table;
    for (auto const& entry : j) {
        IntVec g = intvec_from_json(entry.at("gamma"));
        std::vector<DegreeMap> thetas;
        for (auto const& tj : entry.at("thetas")) {
            DegreeMap t;
            for (auto const& x : tj) t.push_back(rat_parse(x.get<std::string>()));
            thetas.push_back(std::move(t));
        }
        table[g] = std::move(thetas);
    }
    return DerivationSpace::custom_table(n, std::move(gamma), std::move(table));
}

}  // namespace ealab
