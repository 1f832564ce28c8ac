from hypothesis import HealthCheck, settings

# The strategies rejection-sample units and invertible matrices from st.randoms,
# so the minimal random stream is never accepted and Hypothesis reports a large
# base example. This is a property of the strategies, not of the code under test.
settings.register_profile("lfunctions", suppress_health_check=[HealthCheck.large_base_example])
settings.load_profile("lfunctions")
