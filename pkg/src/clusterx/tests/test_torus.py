import pytest

from clusterx.errors import InputError
from clusterx.svg import WriteSVG
from clusterx.test.util import seeded_rng
from clusterx.torus import (BASE_TRIANGLE, PLWord, act_r, act_s, act_t,
                            apply_pl, flip_z, flip_z_inverse, group_elements,
                            interior_sides_ok, orbit_patch, parse_hemisphere,
                            render_hemisphere, side_multiplicity)


def test01_flip():
    assert flip_z((1, 1, -1)) == (-1, 1, 1)
    assert flip_z((1, 1, 2)) == (1, 5, -2)
    assert flip_z_inverse(flip_z((1, 1, -1))) == (1, 1, -1)
    assert act_s((3, -2, 5)) == (8, 3, -5)
    assert act_r((1, 2, 3)) == (2, 3, 1)


@seeded_rng(5)
def test02_relations(rng):
    for _ in range(200):
        p = tuple(int(v) for v in rng.integers(-15, 16, 3))
        assert act_s(act_s(p)) == p
        q = p
        for _ in range(3):
            q = act_s(act_t(q))
        assert q == p
        assert act_r(act_r(act_r(p))) == p
        assert sum(act_s(p)) == sum(p)
        assert flip_z_inverse(flip_z(p)) == p


def test03_words():
    assert PLWord.parse('SS').is_identity()
    assert PLWord.parse('STSTST').is_identity()
    assert PLWord.parse('Tt').is_identity()
    assert PLWord.parse('e 1').is_identity()
    assert not PLWord.parse('TTT').is_identity()
    assert PLWord.parse('T').spelling() == 'T'
    assert PLWord.parse('t').spelling() == 't'
    assert PLWord.parse('TT').spelling() == 'TT'
    assert PLWord(['R']).spelling() == 'ST'
    assert PLWord().spelling() == 'e'
    assert PLWord(['R', 'R']) == PLWord(['RR'])
    assert len(PLWord.parse('STS')) == 3

    w = PLWord.parse('TStTTS')
    assert (w * w.inverse()).is_identity()
    assert PLWord.parse(w.spelling()) == w

    with pytest.raises(InputError):
        PLWord.parse('SX')
    with pytest.raises(InputError):
        PLWord(['Q'])


def test04_apply():
    p = (4, -1, 2)
    assert apply_pl('T', p) == act_t(p)
    assert apply_pl('e', p) == p
    assert apply_pl(PLWord.parse('Tt'), p) == p
    assert apply_pl('ST', p) == act_s(act_t(p))
    with pytest.raises(InputError):
        apply_pl('S', (1, 2))


def test05_group_elements():
    assert group_elements(0) == {PLWord(): 0}
    assert set(group_elements(1).values()) == {0, 1}
    assert len(group_elements(1)) == 4
    with pytest.raises(InputError):
        group_elements(-1)


def test06_patch():
    patch = orbit_patch(1)
    assert [length for length, _ in patch] == [0, 1, 1]
    assert patch[0][1].key() == frozenset(BASE_TRIANGLE)
    assert patch[1][1].key() == frozenset([(0, 1, 0), (1, 0, 0), (2, 0, -1)])
    count = side_multiplicity(patch)
    assert count[frozenset([(1, 0, 0), (0, 1, 0)])] == 2
    assert count[frozenset([(0, 1, 0), (0, 0, 1)])] == 2
    assert count[frozenset([(1, 0, 0), (0, 0, 1)])] == 1


@pytest.mark.parametrize('max_len', [3, 5, 6])
def test07_patch_sides(max_len):
    patch = orbit_patch(max_len)
    assert interior_sides_ok(patch, max_len)
    keys = [tri.key() for _, tri in patch]
    assert len(keys) == len(set(keys))
    assert all(sum(v) == 1 for _, tri in patch for v in tri.vertices)


def test08_render_json(tmpfile):
    patch = orbit_patch(3)
    text = render_hemisphere(patch, 'json', path=tmpfile)
    assert parse_hemisphere(text) == patch
    with open(tmpfile) as f:
        assert f.read() == text
    assert render_hemisphere(patch, 'json') == text

    with pytest.raises(InputError):
        parse_hemisphere('{"triangles": [{"word": "S"}]}')
    with pytest.raises(InputError):
        render_hemisphere(patch, 'png')


def test09_render_svg(tmpfile):
    patch = orbit_patch(2)
    text = render_hemisphere(patch)
    assert text.startswith('<?xml')
    assert text.count('<polygon') == len(patch)
    vertices = {v for _, tri in patch for v in tri.vertices}
    assert text.count('<line') == len(vertices)
    assert render_hemisphere(patch, rays=False).count('<line') == 0
    assert render_hemisphere(patch, path=tmpfile) == text
    assert text.rstrip().endswith('</svg>')


def test10_write_svg(tmpdir):
    path = str(tmpdir.join('sub', 'drawing.svg'))
    w = WriteSVG(path)
    w.write_header(10, 10, (0, 0, 1.5, 1), 'a -- b')
    w.open_element('g', {'stroke': 'red'})
    w.polygon([(0, 0), (1, 0.25), (0.5, 1)])
    w.line((0, 0), (1, 1), {'stroke-width': 0.01})
    assert w.close() is None
    with open(path) as f:
        text = f.read()
    assert 'viewBox="0 0 1.5 1"' in text
    assert '<!-- a - b -->' in text
    assert 'points="0,0 1,0.25 0.5,1"' in text
    assert '\t\t<line x1="0" y1="0" x2="1" y2="1" stroke-width="0.01"/>' \
        in text
    assert text.endswith('\t</g>\n</svg>\n')
