"""CLI invocations with golden reports; run from tests/data."""

from pathlib import Path

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"

# name -> (argv, expected exit status)
CASES = {
    "validate_two": ("validate q_two.json", 0),
    "validate_mixed": ("validate q_trunc3.json z3_disc.json neg.json point_s3.json h_z4_z2.json psi_neg.json", 0),
    "validate_oneway": ("validate z2_oneway.json", 1),
    "validate_antichain": ("validate q_bad_join.json", 1),
    "vaut_z3": ("vaut z3_disc.json", 0),
    "vaut_v4": ("vaut --kernel v4_codisc.json", 0),
    "thm72_codisc_neg": ("thm72 --kernel z3_disc.json --base z2_codisc.json --action neg.json", 0),
    "thm72_disc_neg": ("thm72 --kernel z3_disc.json --base z2_disc.json --action neg.json", 0),
    "structures_neg": ("structures --kernel z3_disc.json --base z2_disc.json --action neg.json", 0),
    "structures_codisc": ("structures --kernel z3_codisc.json --base z2_codisc.json", 0),
    "strong_s3_zero": ("strong --point point_s3.json --h h_zero_z2.json", 0),
    "strong_neg_z4": ("strong --kernel z3_disc.json --base z2_disc.json --action neg.json --h h_z4_z2.json", 0),
    "action_rep_disc": ("action-rep --kernel z3_disc.json --base z2_disc.json", 0),
    "action_rep_codisc": ("action-rep --kernel z3_disc.json --base z2_codisc.json", 0),
    "action_rep_natural": ("action-rep --kernel z3_disc.json --base z2_disc.json --h h_z4_z2.json", 0),
    "kan_cofree": ("kan --h h_unit_codisc.json --psi psi_unit_z2.json", 0),
    "kan_cofree_literal": ("kan --literal --h h_unit_codisc.json --psi psi_unit_z2.json", 1),
    "kan_zero": ("kan --h h_zero_z2.json --psi psi_const_z2.json", 0),
    "adjoint_id": ("adjoint-check --h h_id_z2.json --psi psi_neg.json --phi phi_const_z3.json", 0),
    "pullback_s3_z4": ("pullback --point point_s3.json --h h_z4_z2.json", 0),
}
