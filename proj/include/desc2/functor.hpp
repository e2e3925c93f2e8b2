#pragma once

#include <string>
#include <vector>

#include "two_groupoid.hpp"

namespace desc2
{

/// Strict 2-functor given by its three identifier maps.
struct TwoFunctor
{
    std::vector<Id> obj_map;
    std::vector<Id> one_map;
    std::vector<Id> two_map;

    Id obj(Id x) const { return obj_map[x]; }
    Id one(Id f) const { return one_map[f]; }
    Id two(Id a) const { return two_map[a]; }

    bool operator==(const TwoFunctor&) const = default;
};

inline TwoFunctor identity_functor(const TwoGroupoid& G)
{
    TwoFunctor F;
    for (Id x = 0; x < G.num_objects(); ++x)
        F.obj_map.push_back(x);
    for (Id f = 0; f < G.num_one_cells(); ++f)
        F.one_map.push_back(f);
    for (Id a = 0; a < G.num_two_cells(); ++a)
        F.two_map.push_back(a);
    return F;
}

/// The unique functor into the terminal 2-groupoid.
inline TwoFunctor collapse_functor(const TwoGroupoid& G)
{
    return TwoFunctor{std::vector<Id>(G.num_objects(), 0), std::vector<Id>(G.num_one_cells(), 0),
                      std::vector<Id>(G.num_two_cells(), 0)};
}

/// after ∘ before.
inline TwoFunctor compose_functors(const TwoFunctor& after, const TwoFunctor& before)
{
    TwoFunctor F;
    for (Id x : before.obj_map)
        F.obj_map.push_back(after.obj(x));
    for (Id f : before.one_map)
        F.one_map.push_back(after.one(f));
    for (Id a : before.two_map)
        F.two_map.push_back(after.two(a));
    return F;
}

/// Checks that F is a strict 2-functor G → H. Family "functor".
inline ValidationReport validate_functor(const TwoFunctor& F, const TwoGroupoid& G, const TwoGroupoid& H)
{
    ValidationReport r;
    using W = std::vector<long long>;
    if (F.obj_map.size() != G.num_objects() || F.one_map.size() != G.num_one_cells() ||
        F.two_map.size() != G.num_two_cells())
        throw StructuralError("functor tables do not match the source 2-groupoid");
    for (Id x : F.obj_map)
        if (x >= H.num_objects())
            throw StructuralError("functor sends an object outside the target");
    for (Id f : F.one_map)
        if (f >= H.num_one_cells())
            throw StructuralError("functor sends a 1-cell outside the target");
    for (Id a : F.two_map)
        if (a >= H.num_two_cells())
            throw StructuralError("functor sends a 2-cell outside the target");

    for (Id x = 0; x < G.num_objects(); ++x)
        if (F.one(G.id1(x)) != H.id1(F.obj(x)))
            r.add("functor", "does not preserve id1", W{x});
    for (Id f = 0; f < G.num_one_cells(); ++f) {
        if (H.src(F.one(f)) != F.obj(G.src(f)) || H.tgt(F.one(f)) != F.obj(G.tgt(f)))
            r.add("functor", "does not preserve 1-cell endpoints", W{f});
        if (F.two(G.id2(f)) != H.id2(F.one(f)))
            r.add("functor", "does not preserve id2", W{f});
        for (Id g : G.one_cells_from(G.tgt(f)))
            if (F.one(G.c1(g, f)) != H.c1(F.one(g), F.one(f)))
                r.add("functor", "does not preserve comp1", W{f, g});
    }
    for (Id a = 0; a < G.num_two_cells(); ++a) {
        if (H.src1(F.two(a)) != F.one(G.src1(a)) || H.tgt1(F.two(a)) != F.one(G.tgt1(a)))
            r.add("functor", "does not preserve 2-cell boundaries", W{a});
        for (Id b : G.two_cells_from(G.tgt1(a)))
            if (F.two(G.vc(b, a)) != H.vc(F.two(b), F.two(a)))
                r.add("functor", "does not preserve vcomp", W{a, b});
        for (Id g : G.one_cells_from(G.tgt0(a)))
            for (Id b : G.two_cells_from(g))
                if (F.two(G.hc(b, a)) != H.hc(F.two(b), F.two(a)))
                    r.add("functor", "does not preserve hcomp", W{a, b});
    }
    return r;
}

/// η: Φ ⇒ Ψ, one 1-cell η_x: Φx → Ψx per object of the source.
struct TwoNaturalTransformation
{
    std::vector<Id> eta;
    bool operator==(const TwoNaturalTransformation&) const = default;
};

/// μ: η ⇛ θ, one 2-cell μ_x: η_x ⇒ θ_x per object of the source.
struct Modification
{
    std::vector<Id> mu;
    bool operator==(const Modification&) const = default;
};

/// Whiskering reading of naturality: 1_{η_y} ∘ Φa = Ψa ∘ 1_{η_x} for every
/// 2-cell a: f ⇒ g with f, g: x → y.
inline ValidationReport validate_natural_transformation(const TwoNaturalTransformation& eta, const TwoFunctor& Phi,
                                                        const TwoFunctor& Psi, const TwoGroupoid& G,
                                                        const TwoGroupoid& H)
{
    ValidationReport r;
    using W = std::vector<long long>;
    if (eta.eta.size() != G.num_objects())
        throw StructuralError("transformation needs one component per object");
    for (Id x = 0; x < G.num_objects(); ++x) {
        Id e = eta.eta[x];
        if (e >= H.num_one_cells())
            throw StructuralError("transformation component outside the target");
        if (H.src(e) != Phi.obj(x) || H.tgt(e) != Psi.obj(x))
            r.add("naturality", "component has wrong endpoints", W{x});
    }
    if (!r.ok())
        return r;
    for (Id a = 0; a < G.num_two_cells(); ++a) {
        Id x = G.src0(a), y = G.tgt0(a);
        Id lhs = H.hc(H.id2(eta.eta[y]), Phi.two(a));
        Id rhs = H.hc(Psi.two(a), H.id2(eta.eta[x]));
        if (lhs != rhs)
            r.add("naturality", "1_{η_y}∘Φa != Ψa∘1_{η_x}", W{a});
    }
    return r;
}

/// μ_y ∘ 1_{Φf} = 1_{Ψf} ∘ μ_x for every 1-cell f: x → y.
inline ValidationReport validate_modification(const Modification& mu, const TwoNaturalTransformation& eta,
                                              const TwoNaturalTransformation& theta, const TwoFunctor& Phi,
                                              const TwoFunctor& Psi, const TwoGroupoid& G, const TwoGroupoid& H)
{
    ValidationReport r;
    using W = std::vector<long long>;
    if (mu.mu.size() != G.num_objects())
        throw StructuralError("modification needs one component per object");
    for (Id x = 0; x < G.num_objects(); ++x) {
        Id m = mu.mu[x];
        if (m >= H.num_two_cells())
            throw StructuralError("modification component outside the target");
        if (H.src1(m) != eta.eta[x] || H.tgt1(m) != theta.eta[x])
            r.add("modification", "component has wrong boundary", W{x});
    }
    if (!r.ok())
        return r;
    for (Id f = 0; f < G.num_one_cells(); ++f) {
        Id x = G.src(f), y = G.tgt(f);
        Id lhs = H.hc(mu.mu[y], H.id2(Phi.one(f)));
        Id rhs = H.hc(H.id2(Psi.one(f)), mu.mu[x]);
        if (lhs != rhs)
            r.add("modification", "μ_y∘1_{Φf} != 1_{Ψf}∘μ_x", W{f});
    }
    return r;
}

} // namespace desc2
