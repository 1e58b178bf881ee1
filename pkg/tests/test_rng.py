import numpy as np

from sunflowers.rng import generator, trial_uniforms, uniform_block


def test_trial_rows_match_batch_rows():
    full = uniform_block(seed=7, stream=3, first_trial=0, trials=40, width=13)
    for t in (0, 1, 7, 39):
        assert np.array_equal(trial_uniforms(7, 3, t, 13), full[t])


def test_chunking_is_invisible():
    full = uniform_block(seed=11, stream=1, first_trial=0, trials=100, width=6)
    parts = np.concatenate(
        [uniform_block(11, 1, start, 25, 6) for start in (0, 25, 50, 75)], axis=0
    )
    assert np.array_equal(full, parts)


def test_streams_and_seeds_decorrelate():
    a = uniform_block(5, 1, 0, 4, 8)
    assert not np.array_equal(a, uniform_block(5, 2, 0, 4, 8))
    assert not np.array_equal(a, uniform_block(6, 1, 0, 4, 8))
    assert np.array_equal(a, uniform_block(5, 1, 0, 4, 8))


def test_generator_matches_block_start():
    gen = generator(seed=9, stream=4)
    assert np.array_equal(gen.random(12), uniform_block(9, 4, 0, 1, 12)[0])
