import hypothesis

# One shared profile: no deadline (eigensolver timing is noisy under load),
# a modest example count so the whole suite stays fast, and derandomization
# so failures reproduce without a seed hunt.
hypothesis.settings.register_profile(
    "momquad", deadline=None, max_examples=25, derandomize=True
)
hypothesis.settings.load_profile("momquad")
