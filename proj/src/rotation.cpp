#include "shadowcalc/coherence.hpp"

namespace shadowcalc {

// The two glued squares of the rotation counterexample. Each square has the
// center maps (up, left, down, right) = (id, l, d, id); copy one uses the
// twist l = d = f, copy two uses identities. The two composite relation
// automorphisms of X -> X x B must differ when f is not the identity.
RotationVerdict negative_test_rotation(std::uint64_t seed, bool control_identity, int base_size) {
    Rng rng(seed);
    BaseObject B = BaseObject::range(base_size);
    std::map<Elem, Elem> cyc;
    for (int i = 0; i < base_size; ++i) cyc[Elem::atom(i)] = Elem::atom((i + 1) % base_size);
    BaseMap f = control_identity ? BaseMap::identity(B) : BaseMap(B, B, cyc);

    LabeledProduct bB = LabeledProduct::single(0, B);
    LabeledProductMap id_lp = LabeledProductMap::identity(bB);
    LabeledProductMap f_lp(bB, bB, {{0, 0}}, {{0, f}});
    LabeledProductMap pi_lp(bB, LabeledProduct::empty(), {}, {});

    // a random test family over the point
    Family x;
    x.base = LabeledProduct::empty();
    int n = rng.pick(1, 2);
    for (int i = 0; i < n; ++i) x.insert(Elem::atom(i), {});
    Family z = pullback(pi_lp, x);  // over B

    // the relation path through one copy, from the outer route via (b,g) to
    // the outer route via (g,b)
    auto path_through = [&](const BaseMap& center) -> Bijection {
        LabeledProductMap c_lp(bB, bB, {{0, 0}}, {{0, center}});
        // corner (b,w): down_! left^* to the outer pushforward route
        Bijection s1 = pushforward_map(pi_lp, beck_chevalley_iso(c_lp, c_lp, id_lp, id_lp, z)).inverse();
        // corner (b,b): the two pushforwards to the point agree
        Family w1 = pullback(c_lp, z);
        Bijection s2 = compose(iso_comp_push(c_lp, pi_lp, w1).inverse(), iso_comp_push(id_lp, pi_lp, w1));
        // corner (w,w): left^* pi^* to up^* pi^*, whiskered by the pushforwards
        Bijection iso_a =
            compose(iso_comp_pull(id_lp, pi_lp, x).inverse(), iso_comp_pull(c_lp, pi_lp, x));
        Bijection s3 = pushforward_map(pi_lp, pushforward_map(id_lp, iso_a)).inverse();
        // corner (w,b): right_! up^* to the outer pullback route
        Bijection s4 = pushforward_map(pi_lp, beck_chevalley_iso(id_lp, id_lp, id_lp, id_lp, z));
        return compose(compose(s1, s2), compose(s3, s4));
    };

    Bijection through_twist = path_through(f);
    Bijection through_identity = path_through(BaseMap::identity(B));
    Bijection automorphism = compose(through_twist, through_identity.inverse());

    RotationVerdict v;
    for (const auto& [k, val] : automorphism.el) {
        if (!(k == val)) {
            v.unequal = true;
            v.witness = k.str() + " -> " + val.str();
            break;
        }
    }
    if (!v.unequal) v.witness = "both routes give the identity automorphism";
    return v;
}

}  // namespace shadowcalc
