import pytest

from synroute.pipeline import Pipeline, PipelineConfig

from fixtures import build_case_study, build_workload

WORKLOAD_CONFIG = dict(encoder_dim=8192, epochs=150, seed=7)


@pytest.fixture(scope="session")
def workload():
    corpus, queries, parses = build_workload()
    return corpus, queries, parses


@pytest.fixture(scope="session")
def workload_pipeline(workload):
    corpus, queries, parses = workload
    pipeline = Pipeline(corpus, PipelineConfig(**WORKLOAD_CONFIG))
    pipeline.parses = dict(parses)
    pipeline.build_indexes()
    pipeline.train_adapter(queries)
    return pipeline


@pytest.fixture(scope="session")
def case_study(workload_pipeline):
    corpus, queries, parses = build_case_study()
    pipeline = Pipeline(corpus, PipelineConfig(**WORKLOAD_CONFIG))
    pipeline.parses = dict(parses)
    pipeline.build_indexes()
    # the adapter generalizes across corpora: reuse the workload-trained one
    pipeline.schema = workload_pipeline.schema
    pipeline.adapter = workload_pipeline.adapter
    return pipeline, queries
