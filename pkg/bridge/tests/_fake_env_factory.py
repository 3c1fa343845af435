"""Factory for the CLI test: replays the recorded observations."""

import json
import os

HERE = os.path.dirname(__file__)


class Env:
    def __init__(self, obs):
        self.obs = obs
        self.actions = list(range(256))
        self.i = 0

    def reset(self):
        self.i = 0
        return self.obs[0]

    def step(self, action):
        self.i = min(self.i + 1, len(self.obs) - 1)
        done = self.i == len(self.obs) - 1
        return self.obs[self.i], 0.0, done, {}


def make_env():
    with open(os.path.join(HERE, "fixtures", "nle_observations.json")) as f:
        return Env(json.load(f))
