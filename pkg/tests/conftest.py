import hypothesis

# One shared profile: no deadline (eigendecompositions on CI boxes can
# hiccup), derandomized so every run exercises the same cases.
hypothesis.settings.register_profile(
    "suite", deadline=None, max_examples=60, derandomize=True
)
hypothesis.settings.load_profile("suite")
