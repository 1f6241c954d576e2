"""Smoke test for the fdalg Python bindings. Run after `maturin develop` in crates/python."""

import fdalg


def flags(cert):
    return {(v["flag"], v["rule"]) for v in cert["verdicts"]}


def main():
    p = fdalg.Presentation("Q", 2, 3, ["X1^2 + X2^2"])
    assert p.algebra_dim == 5 and p.lowey == 3
    assert p.normal_form() == ["X1^2 + X2^2"]
    assert p.property_star() == 1
    cert = p.certify()
    assert ("R_TRIVIAL", "R-DIM5") in flags(cert)
    assert ("NOT_K_SPLIT", "R-QANIS") in flags(cert)

    over5 = fdalg.Presentation("GFp:5", 2, 3, ["X1^2 + X2^2"])
    assert not any(rule == "R-QANIS" for _, rule in flags(over5.certify()))

    w = fdalg.Presentation("Q", 2, 4, ["X1^2", "X1^3 + X2^3"]).minimal_degree_subspace()
    assert w == (2, ["X1^2"])

    a = fdalg.Algebra.truncated_polynomial("Q", 3)
    assert a.radical() == {"dim_j": 2, "dim_j2": 1, "dim_jj2": 1, "lowey_length": 3}
    assert a.derivations() == {"dim_der": 2, "dim_ker_phi_lie": 1}

    g = fdalg.Algebra.truncated_polynomial("GFp:3", 3).automorphisms()
    assert g == {"order": 6, "jj2_image_size": 2, "jj2_kernel_count": 3}

    m2 = fdalg.Algebra.matrix_algebra("Q", 2)
    assert ("SEMISIMPLE", "R-SEMI") in flags(m2.certify())
    assert fdalg.Algebra.from_json(m2.to_json()).dim == 4

    assert fdalg.stab_lie_dim("X1^2 + X2^2 + X3^2", 3) == 3
    assert fdalg.sim_lie_dim("X1^2 + X2^2 + X3^2", 3) == 4
    assert fdalg.nonsingularity_verdict("X1^3 + X2^3", 2) == "NONSINGULAR_CERTIFIED"
    assert fdalg.isotropy_verdict("X1^2 + X2^2", 2, "GFp:5") == ("ISOTROPIC_WITNESS", ["1", "2"])

    try:
        fdalg.Algebra.truncated_polynomial("Q", 2).automorphisms()
    except NotImplementedError:
        pass
    else:
        raise AssertionError("enumeration over Q must be rejected")
    try:
        fdalg.Presentation("Q", 2, 3, ["X1"])
    except ValueError:
        pass
    else:
        raise AssertionError("linear generators must be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
