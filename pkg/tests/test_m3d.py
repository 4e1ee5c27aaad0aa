import pytest

from nscache.m3d import (M3DError, MIVParams, TierStack, assemble_m3d_mat,
                         fold_array, miv_parasitics, reshape_feol)
from nscache.mat import MatDesign, build_mat


def gc_design(tech7, cells7, rows=256, cols=256):
    return MatDesign(cell=cells7["gc2t"], n_rows=rows, n_cols=cols,
                     tech=tech7, folded_bitline=True, reference_rows=1)


class TestFoldArray:
    def test_two_folds_of_tall_array(self):
        stack = fold_array(100.0, 400.0, 2)
        assert stack.n_memory_tiers == 4
        assert (stack.footprint_w_um, stack.footprint_h_um) == (100.0, 100.0)

    def test_zero_folds_identity(self):
        stack = fold_array(123.0, 77.0, 0)
        assert stack.n_memory_tiers == 1
        assert (stack.footprint_w_um, stack.footprint_h_um) == (123.0, 77.0)

    def test_three_folds_rejected(self):
        with pytest.raises(M3DError):
            fold_array(100.0, 400.0, 3)

    def test_largest_dimension_rule(self):
        stack = fold_array(400.0, 100.0, 2)
        # width halves twice: 400 -> 200 (still larger) -> 100
        assert (stack.footprint_w_um, stack.footprint_h_um) == (100.0, 100.0)
        assert stack.wl_r_scale == pytest.approx(0.25)
        assert stack.bl_r_scale == 1.0

    def test_area_conserved(self):
        for folds in (0, 1, 2):
            stack = fold_array(80.0, 300.0, folds)
            total = sum(w * h for w, h in stack.tier_dims)
            assert total == pytest.approx(80.0 * 300.0)


class TestReshapeFeol:
    def test_square(self):
        assert reshape_feol(10_000.0, 1.0) == (pytest.approx(100.0),
                                               pytest.approx(100.0))

    def test_aspect_four(self):
        w, h = reshape_feol(10_000.0, 4.0)
        assert (w, h) == (pytest.approx(200.0), pytest.approx(50.0))

    def test_matching_aspect_gives_zero_extension(self):
        aw, ah = 120.0, 60.0
        w, h = reshape_feol(aw * ah, aw / ah)
        assert abs(w - aw) < 1e-9 and abs(h - ah) < 1e-9

    def test_bad_inputs(self):
        with pytest.raises(M3DError):
            reshape_feol(0.0, 1.0)


class TestMivParasitics:
    def mivs(self):
        return MIVParams(r_per_via=20.0, c_per_um_height=0.2e-15,
                         diameter_nm=40, pitch_nm=100, tier_height_um=0.2)

    def stack(self, tiers, height):
        return TierStack(n_memory_tiers=tiers, footprint_w_um=10,
                         footprint_h_um=10, tier_dims=((10, 10),) * tiers,
                         miv_max_height_um=height)

    def test_unit_case(self):
        r, c, area = miv_parasitics(self.stack(1, 0.4), self.mivs(), 1)
        assert r == pytest.approx(20.0)
        assert c == pytest.approx(0.2e-15 * 0.4)
        assert area == pytest.approx(0.1 * 0.1)

    def test_four_tier_height_scaling(self):
        mivs = self.mivs()
        height = 4 * 2 * mivs.tier_height_um
        _, c, _ = miv_parasitics(self.stack(4, height), mivs, 16)
        assert c == pytest.approx(mivs.c_per_um_height * height)

    def test_zero_signals(self):
        assert miv_parasitics(self.stack(2, 0.8), self.mivs(), 0) == (0, 0, 0)


class TestAssemble:
    def test_stacking_never_beats_planar(self, tech7, cells7):
        design = gc_design(tech7, cells7)
        planar = build_mat(design)
        stacked = assemble_m3d_mat(design, 0)
        assert stacked.footprint_w_um * stacked.footprint_h_um \
            <= planar.footprint_w_um * planar.footprint_h_um

    def test_footprint_monotone_in_folds(self, tech7, cells7):
        design = gc_design(tech7, cells7)
        fps = []
        tiers = []
        for folds in (0, 1, 2):
            m = assemble_m3d_mat(design, folds)
            fps.append(m.footprint_w_um * m.footprint_h_um)
            tiers.append(len(m.tier_dims))
        assert fps[2] <= fps[1] <= fps[0]
        assert tiers == [1, 2, 4]

    def test_density_monotone_in_folds(self, tech7, cells7):
        design = gc_design(tech7, cells7)
        bits = design.n_rows * design.n_cols
        dens = [bits / (m.footprint_w_um * m.footprint_h_um)
                for m in (assemble_m3d_mat(design, f) for f in (0, 1, 2))]
        assert dens[0] <= dens[1] <= dens[2]

    def test_tier_area_conservation(self, tech7, cells7):
        design = gc_design(tech7, cells7)
        base = assemble_m3d_mat(design, 0)
        unfolded_area = sum(w * h for w, h in base.tier_dims)
        for folds in (1, 2):
            m = assemble_m3d_mat(design, folds)
            cell = design.cell
            pad = cell.width_um * cell.height_um * max(design.n_rows,
                                                       design.n_cols)
            assert sum(w * h for w, h in m.tier_dims) \
                == pytest.approx(unfolded_area, abs=pad)

    def test_fold_latency_stays_bounded(self, tech7, cells7):
        design = gc_design(tech7, cells7)
        t0 = assemble_m3d_mat(design, 0).t_read_s
        for folds in (1, 2):
            t = assemble_m3d_mat(design, folds).t_read_s
            # line-R halving compensates the added via/extension parasitics
            assert t <= t0 * 1.10

    def test_feol_cell_rejected(self, tech7, cells7):
        design = MatDesign(cell=cells7["sram"], n_rows=128, n_cols=128,
                           tech=tech7)
        with pytest.raises(M3DError):
            assemble_m3d_mat(design, 1)

    def test_extra_feol_area_grows_frame(self, tech7, cells7):
        design = gc_design(tech7, cells7)
        plain = assemble_m3d_mat(design, 1)
        padded = assemble_m3d_mat(design, 1, extra_feol_area_um2=500.0)
        assert padded.footprint_w_um * padded.footprint_h_um \
            >= plain.footprint_w_um * plain.footprint_h_um
