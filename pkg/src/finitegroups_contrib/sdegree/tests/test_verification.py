#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
from concurrent.futures import Executor

import pytest

from finitegroups_contrib.sdegree import verification
from finitegroups_contrib.sdegree.cli import EXIT_OK, main
from finitegroups_contrib.sdegree.config import configure
from finitegroups_contrib.sdegree.exceptions import ConfigurationError
from finitegroups_contrib.sdegree.reporting import render, verify_table
from finitegroups_contrib.sdegree.verification import (
    DEFAULT_CORPUS,
    SUITES,
    expand_suites,
    load_corpus,
    run_suite,
    run_verify,
    zm_corpus,
)


class TestInputs:
    @pytest.mark.unit
    def test_expand_suites(self):
        assert expand_suites(["all"]) == SUITES
        assert expand_suites([]) == SUITES
        assert expand_suites(["bounds", "lattice"]) == ("lattice", "bounds")
        with pytest.raises(ConfigurationError):
            expand_suites(["lattice", "prop99"])

    @pytest.mark.unit
    def test_load_corpus_drops_invalid_entries(self):
        assert load_corpus(["S3", "Q8", " Z2 x Z2 ", "ZM(4,2,3)"]) == ("S3", "Z2xZ2")
        assert len(load_corpus()) == len(DEFAULT_CORPUS)

    @pytest.mark.unit
    def test_zm_corpus(self):
        corpus = zm_corpus(12)
        assert "ZM(3,2,2)" in corpus
        assert all(text.startswith("ZM(") for text in corpus)


class TestSuites:
    @pytest.mark.unit
    @pytest.mark.parametrize("text", ["S3", "D8", "A4", "Z12", "S4"])
    @pytest.mark.parametrize(
        "suite", ["lattice", "conjugacy", "maximal", "bounds", "sd-one"]
    )
    def test_passes(self, suite, text):
        result = run_suite(suite, text)
        assert result.status == "pass", result.witness
        assert result.checked > 0

    @pytest.mark.unit
    def test_product_suite(self):
        assert run_suite("coprime-product", "S3xZ5").status == "pass"
        assert run_suite("coprime-product", "Z2xZ2").status == "skip"
        assert run_suite("coprime-product", "S4").status == "skip"

    @pytest.mark.unit
    def test_nilpotent_suite(self):
        assert run_suite("sylow", "Z2xZ9").status == "pass"
        assert run_suite("sylow", "S3").status == "skip"

    @pytest.mark.unit
    def test_shortcut_suite(self):
        assert run_suite("maximal-shortcut", "A4").status == "pass"
        result = run_suite("maximal-shortcut", "S4")
        assert result.status == "skip"
        assert result.witness.startswith("hypothesis fails at")

    @pytest.mark.unit
    def test_zm_suite(self):
        result = run_suite("zm-bijection", "ZM(3,2,2)")
        assert result.status == "pass"
        assert result.checked == 6
        assert run_suite("zm-bijection", "S3").status == "skip"

    @pytest.mark.unit
    def test_nary_suite(self):
        assert run_suite("nary", "D8").status == "pass"

    @pytest.mark.unit
    def test_cap_gives_error_status(self):
        configure(max_order=60)
        result = run_suite("maximal", "S5")
        assert result.status == "error"
        assert "exceeds the configured cap" in result.witness


class TestRunVerify:
    corpus = ["S3", "D8", "Z2xZ9", "ZM(3,2,2)"]

    @pytest.mark.unit
    def test_report(self):
        report = run_verify(["maximal", "bounds", "zm-bijection"], self.corpus)
        assert report.ok
        assert len(report.results) == 12
        assert [r.group for r in report.results[:3]] == ["S3"] * 3
        counts = report.counts()
        assert counts["pass"] == 9 and counts["skip"] == 3
        assert report.failures() == []

    @pytest.mark.unit
    def test_errors_make_the_report_fail(self):
        configure(max_order=60)
        report = run_verify(["maximal"], ["S3", "S5"])
        assert not report.ok
        assert [r.group for r in report.failures()] == ["S5"]

    @pytest.mark.unit
    def test_json_is_reproducible(self):
        runs = [run_verify(["nary", "bounds"], self.corpus) for _ in range(2)]
        first, second = (render(verify_table(r), "json") for r in runs)
        assert first == second

    @pytest.mark.component
    def test_workers_do_not_change_results(self):
        serial = run_verify(["maximal", "conjugacy"], self.corpus, jobs=1)
        parallel = run_verify(["maximal", "conjugacy"], self.corpus, jobs=2)
        assert parallel.results == serial.results


class _InlinePool(Executor):
    """Runs submitted work in this process and records how it was built."""

    created = []

    def __init__(self, max_workers=None, initializer=None, initargs=()):
        self.created.append(max_workers)
        if initializer is not None:
            initializer(*initargs)

    def map(self, fn, *iterables, **kwargs):
        return map(fn, *iterables)


class TestWorkerCount:
    corpus = ["S3", "D8"]

    @pytest.fixture
    def pools(self, monkeypatch):
        monkeypatch.delenv("SDEGREE_JOBS", raising=False)
        monkeypatch.setattr(_InlinePool, "created", [])
        monkeypatch.setattr(verification, "ProcessPoolExecutor", _InlinePool)
        return _InlinePool.created

    @pytest.mark.unit
    def test_configured_jobs_reach_the_pool(self, pools):
        configure(jobs=3)
        report = run_verify(["bounds"], self.corpus)
        assert pools == [3]
        assert report.ok

    @pytest.mark.unit
    def test_explicit_jobs(self, pools):
        run_verify(["bounds"], self.corpus, jobs=2)
        assert pools == [2]

    @pytest.mark.unit
    def test_single_job_runs_inline(self, pools):
        run_verify(["bounds"], self.corpus)
        assert pools == []

    @pytest.mark.unit
    def test_cli_jobs_flag(self, pools, capsys):
        code = main(
            ["verify", "--suite", "bounds", "--corpus", "S3", "D8", "--jobs", "2"]
        )
        capsys.readouterr()
        assert code == EXIT_OK
        assert pools == [2]
