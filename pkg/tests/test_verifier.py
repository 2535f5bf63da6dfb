import json

from t3mcg.rep6 import GeneratorTable6, derive_twist6
from t3mcg.verifier import run_suite

EXPECTED_CHECKS = [
    "shear_images",
    "kernel_generators",
    "twist_macros_downstairs",
    "rotation_words",
    "swap_involution",
    "twist_inverse_pairs",
    "handedness_arbiter",
    "projection_intertwining",
    "mesh_facts",
    "decomposition_roundtrip",
]


class TestSuite:
    def test_all_checks_pass(self, homology32, table32):
        report = run_suite(table32, homology32, seed=7)
        assert [c["name"] for c in report.checks] == EXPECTED_CHECKS
        failures = [c for c in report.checks if c["status"] != "pass"]
        assert not failures, failures

    def test_report_is_deterministic(self, homology32, table32):
        r1 = run_suite(table32, homology32, seed=3)
        r2 = run_suite(table32, homology32, seed=3)
        assert json.dumps(r1.to_json(), sort_keys=True) == json.dumps(
            r2.to_json(), sort_keys=True
        )

    def test_report_serializes(self, homology32, table32):
        report = run_suite(table32, homology32, seed=0)
        data = json.loads(json.dumps(report.to_json()))
        assert data["seed"] == 0
        assert data["resolution"] == 32
        assert data["all_passed"] is True


class TestNegativeControls:
    def test_corrupted_shear_fails_intertwining(self, homology32, table32):
        mats = dict(table32.matrices)
        # wrong ambient block (still a valid integer symplectic matrix)
        mats["a12"] = table32.matrices["a13"]
        corrupt = GeneratorTable6(
            matrices=mats,
            provenance={},
            candidate_counts={},
            handedness=table32.handedness,
            resolution=table32.resolution,
            tube_radius=table32.tube_radius,
        )
        report = run_suite(corrupt, homology32, seed=7)
        by_name = {c["name"]: c for c in report.checks}
        assert by_name["projection_intertwining"]["status"] == "fail"
        witness = by_name["projection_intertwining"]["witness"]
        assert witness and "projected_surface_action" in witness[0]

    def test_losing_handedness_fails_arbiter(self, homology32, table32):
        mats = dict(table32.matrices)
        mats["t"] = derive_twist6(homology32, "all_plus")
        forced = GeneratorTable6(
            matrices=mats,
            provenance={},
            candidate_counts={},
            handedness="all_plus",
            resolution=table32.resolution,
            tube_radius=table32.tube_radius,
        )
        report = run_suite(forced, homology32, seed=7)
        by_name = {c["name"]: c for c in report.checks}
        assert by_name["handedness_arbiter"]["status"] == "fail"
        assert by_name["handedness_arbiter"]["witness"]["winners"] == ["alternating"]
