import pytest
from fastapi.testclient import TestClient

from mobishift import load_dataset
from mobishift.service import create_app


@pytest.fixture(scope="session")
def ds():
    return load_dataset()


@pytest.fixture(scope="session")
def app():
    return create_app()


@pytest.fixture(scope="session")
def client(app):
    return TestClient(app)


ACCEPTANCE_LABELS = {
    "test_c1_emission_factor_reproduction": "1. emission factor reproduction",
    "test_c2_mobility_profile_reconstruction": "2. mobility profile reconstruction",
    "test_c3_case_study_totals": "3. case study emission totals",
    "test_c4_no_modal_shift_counterfactual": "4. no-modal-shift counterfactual",
    "test_c5_sensitivity_sweeps": "5. sensitivity sweeps",
    "test_c6_fleet_mileage_and_lifetimes": "6. fleet mileage and lifetime tables",
    "test_c7_logistic_regression_properties": "7. retirement regression properties",
    "test_c8_interface_parity": "8. CLI/HTTP interface parity",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One verdict line per acceptance criterion at the end of the run."""
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(key, []):
            nodeid = getattr(report, "nodeid", "")
            name = nodeid.split("::")[-1]
            if "test_acceptance.py" not in nodeid or name not in ACCEPTANCE_LABELS:
                continue
            verdict = "PASS" if key == "passed" else "FAIL"
            if outcomes.get(name) != "FAIL":
                outcomes[name] = verdict
    if outcomes:
        terminalreporter.section("acceptance criteria")
        for name, label in ACCEPTANCE_LABELS.items():
            if name in outcomes:
                terminalreporter.write_line(f"{outcomes[name]}  {label}")
