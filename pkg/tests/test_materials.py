import math

import pytest

from bcsmep.core import MaterialParams
from bcsmep.errors import MaterialsFileError, MissingDataError
from bcsmep.materials import (MaterialsTable, MepReportRow, dump_materials,
                              load_default_materials, load_materials,
                              mep_report, reference_neg_log10, report_csv,
                              report_text)

GOOD_DOC = """\
# minimal three-element file
normalization = states/eV per spin per atom

name = A
dos_fermi = 0.5
debye_energy = 0.02
gap_mev = 1.0

name = B
dos_fermi = 0.5
debye_temperature = 250.0
tc_k = 5.0

name = C
dos_fermi = 0.25
debye_energy = 0.03
lambda = 0.4
"""


class TestLoader:
    def test_well_formed_document(self):
        table = load_materials(GOOD_DOC)
        assert [e.name for e in table.entries] == ["A", "B", "C"]
        assert table.normalization == "states/eV per spin per atom"
        a = table.entries[0]
        assert a.gap == pytest.approx(1.0e-3, rel=1e-15)
        b = table.entries[1]
        assert b.debye_energy == pytest.approx(250.0 * 8.617333262e-5, rel=1e-15)
        assert b.gap is None and b.tc == 5.0

    def test_default_file_has_six_elements(self):
        table = load_default_materials()
        assert [e.name for e in table.entries] == ["Hf", "Ru", "Mo", "Os", "Nb", "Pb"]
        assert "states/eV" in table.normalization

    def test_tc_only_entry_loads(self):
        table = load_materials(
            "normalization = x\nname = T\ndos_fermi = 1.0\n"
            "debye_energy = 0.02\ntc_k = 1.5\n")
        assert table.entries[0].tc == 1.5

    def test_unknown_key_reports_offending_line(self):
        doc = GOOD_DOC + "\nname = D\ndos_fermi = 1.0\nbanana = 3\n"
        with pytest.raises(MaterialsFileError, match=r"banana = 3"):
            load_materials(doc)

    def test_parse_error_carries_line_number(self):
        doc = "normalization = x\n\nname = A\ndos_fermi ?\n"
        with pytest.raises(MaterialsFileError, match="line 4"):
            load_materials(doc)

    def test_bad_number_rejected(self):
        doc = "normalization = x\nname = A\ndos_fermi = twelve\n"
        with pytest.raises(MaterialsFileError, match="twelve"):
            load_materials(doc)

    def test_duplicate_name_rejected(self):
        doc = ("normalization = x\n"
               "name = A\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 1\n"
               "name = A\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 1\n")
        with pytest.raises(MaterialsFileError, match="duplicate material name"):
            load_materials(doc)

    def test_duplicate_key_rejected(self):
        doc = ("normalization = x\n"
               "name = A\ndos_fermi = 1\ndos_fermi = 2\n")
        with pytest.raises(MaterialsFileError, match="duplicate key"):
            load_materials(doc)

    def test_missing_normalization_rejected(self):
        doc = "name = A\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 1\n"
        with pytest.raises(MaterialsFileError, match="normalization"):
            load_materials(doc)

    def test_normalization_after_block_rejected(self):
        doc = ("name = A\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 1\n"
               "normalization = too late\n")
        with pytest.raises(MaterialsFileError):
            load_materials(doc)

    def test_key_outside_block_rejected(self):
        doc = "normalization = x\ndos_fermi = 1\n"
        with pytest.raises(MaterialsFileError, match="before any"):
            load_materials(doc)

    def test_both_debye_keys_rejected(self):
        doc = ("normalization = x\nname = A\ndos_fermi = 1\n"
               "debye_energy = 0.02\ndebye_temperature = 200\ngap_mev = 1\n")
        with pytest.raises(MaterialsFileError, match="exactly one"):
            load_materials(doc)

    def test_both_gap_keys_rejected(self):
        doc = ("normalization = x\nname = A\ndos_fermi = 1\n"
               "debye_energy = 0.02\ngap_mev = 1\ngap_ev = 0.001\n")
        with pytest.raises(MaterialsFileError, match="both gap_mev and gap_ev"):
            load_materials(doc)

    def test_invariant_violation_names_entry(self):
        doc = ("normalization = x\nname = Bad\ndos_fermi = -1\n"
               "debye_energy = 0.02\ngap_mev = 1\n")
        with pytest.raises(MaterialsFileError, match="Bad"):
            load_materials(doc)

    def test_no_gap_route_rejected(self):
        doc = "normalization = x\nname = A\ndos_fermi = 1\ndebye_energy = 0.02\n"
        with pytest.raises(MaterialsFileError, match="at least one of"):
            load_materials(doc)


class TestRoundTrip:
    def test_loaded_table_survives_dump_and_reload(self):
        first = load_materials(GOOD_DOC)
        second = load_materials(dump_materials(first))
        assert first == second

    def test_default_table_survives_dump_and_reload(self):
        first = load_default_materials()
        second = load_materials(dump_materials(first))
        assert first == second


class TestReport:
    def test_sorted_descending_by_mep(self):
        rows, errors = mep_report(load_default_materials())
        assert errors == []
        assert [r.name for r in rows] == ["Pb", "Nb", "Os", "Mo", "Ru", "Hf"]
        meps = [r.mep for r in rows]
        assert meps == sorted(meps, reverse=True)

    def test_eliashberg_separation_on_default_data(self):
        rows, _ = mep_report(load_default_materials())
        by_name = {r.name: r.mep for r in rows}
        strong = min(by_name["Pb"], by_name["Nb"])
        transition = max(by_name["Hf"], by_name["Ru"], by_name["Mo"], by_name["Os"])
        assert strong / transition > 1e2

    def test_tie_break_by_name(self):
        doc = ("normalization = x\n"
               "name = zeta\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 1\n"
               "name = alpha\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 1\n")
        rows, _ = mep_report(load_materials(doc))
        assert [r.name for r in rows] == ["alpha", "zeta"]
        assert rows[0].mep == rows[1].mep

    def test_zero_gap_entry_sorts_last(self):
        doc = ("normalization = x\n"
               "name = gapless\ndos_fermi = 1\ndebye_energy = 0.02\ngap_ev = 0.0\n"
               "name = gapped\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 1\n")
        rows, _ = mep_report(load_materials(doc))
        assert rows[-1].name == "gapless"
        assert rows[-1].mep == 0.0
        assert math.isinf(rows[-1].neg_log10_mep)

    def test_monotone_response_to_gap(self):
        base_doc = ("normalization = x\n"
                    "name = probe\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 1\n"
                    "name = other\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 2\n")
        bumped_doc = base_doc.replace("gap_mev = 1\n", "gap_mev = 3\n")
        base_rows, _ = mep_report(load_materials(base_doc))
        bumped_rows, _ = mep_report(load_materials(bumped_doc))
        base_probe = next(r for r in base_rows if r.name == "probe")
        bumped_probe = next(r for r in bumped_rows if r.name == "probe")
        assert bumped_probe.mep > base_probe.mep
        base_rank = [r.name for r in base_rows].index("probe")
        bumped_rank = [r.name for r in bumped_rows].index("probe")
        assert bumped_rank <= base_rank

    def test_row_level_error_collected(self):
        table = load_materials(GOOD_DOC)
        object.__setattr__(table.entries[1], "gap", None)
        object.__setattr__(table.entries[1], "tc", None)
        object.__setattr__(table.entries[1], "lambda_ep", None)
        rows, errors = mep_report(table)
        assert [r.name for r in rows] != []
        assert len(rows) == 2
        assert len(errors) == 1 and errors[0].startswith("B:")

    def test_report_row_validation(self):
        with pytest.raises(ValueError):
            MepReportRow(name="x", n1=1.0, n2=1.0, mep=0.5, neg_log10_mep=7.0)
        with pytest.raises(ValueError):
            MepReportRow(name="x", n1=1.0, n2=1.0, mep=1.5,
                         neg_log10_mep=-math.log10(1.5))


class TestRenderers:
    def test_csv_header_and_precision(self):
        rows, _ = mep_report(load_default_materials())
        text = report_csv(rows)
        lines = text.splitlines()
        assert lines[0] == "name,n1,n2,mep,neg_log10_mep,lambda,tc"
        assert len(lines) == 7
        first = lines[1].split(",")
        assert first[0] == "Pb"
        assert float(first[3]) == rows[0].mep  # repr round-trips exactly
        assert "," in text and ";" not in text

    def test_csv_empty_cells_for_missing_optionals(self):
        doc = ("normalization = x\n"
               "name = A\ndos_fermi = 1\ndebye_energy = 0.02\ngap_mev = 1\n")
        rows, _ = mep_report(load_materials(doc))
        line = report_csv(rows).splitlines()[1]
        assert line.endswith(",,")

    def test_text_report_includes_normalization_and_reference(self):
        rows, _ = mep_report(load_default_materials())
        text = report_text(rows, "tag-string", reference=reference_neg_log10())
        assert "# normalization: tag-string" in text
        assert "ref -log10" in text
        assert "3.295" in text  # Pb reference value shown side by side


class TestTableType:
    def test_duplicate_names_rejected(self):
        entry = MaterialParams(name="A", dos_fermi=1.0, debye_energy=0.02,
                               gap=0.001)
        with pytest.raises(ValueError, match="duplicate"):
            MaterialsTable(entries=(entry, entry), normalization="x")

    def test_lookup_missing_entry(self):
        table = load_default_materials()
        with pytest.raises(MissingDataError, match="Xx"):
            table.entry("Xx")

    def test_reference_fixture_complete(self):
        reference = reference_neg_log10()
        assert set(reference) == {"Hf", "Ru", "Mo", "Os", "Nb", "Pb"}
        assert reference["Pb"] == 3.295
