import difflib
import typing
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from loguru import logger
from pydantic import BaseModel, ValidationError
from ruamel.yaml import YAML
from ruamel.yaml.error import MarkedYAMLError, YAMLError

from src.tools.errors import ConfigurationError, ErrorMessages
from src.types.scenario import Scenario


def _model_at(model: type, loc: Sequence[Union[str, int]]) -> Optional[type]:
    """沿 pydantic 错误路径找到所在的模型类，用于给出候选字段"""
    current = model
    for part in loc:
        if isinstance(part, int):
            continue
        field = current.model_fields.get(part)
        if field is None:
            return None
        annotation = field.annotation
        candidates = [annotation, *typing.get_args(annotation)]
        nested = [c for c in candidates if isinstance(c, type) and issubclass(c, BaseModel)]
        if not nested:
            # List[CheckSpec] 之类的容器
            nested = [
                inner for c in typing.get_args(annotation)
                for inner in [c, *typing.get_args(c)]
                if isinstance(inner, type) and issubclass(inner, BaseModel)
            ]
        if not nested:
            return None
        current = nested[0]
    return current


def _dotted(loc: Sequence[Union[str, int]]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def describe_errors(error: ValidationError, model: type = Scenario) -> List[str]:
    """把 ValidationError 转成带点分路径的可读条目；未知字段附带近似候选"""
    lines = []
    for item in error.errors():
        loc = item["loc"]
        if item["type"] == "extra_forbidden":
            parent, key = loc[:-1], str(loc[-1])
            line = ErrorMessages.CONFIG_UNKNOWN_KEY.format(loc=_dotted(parent), key=key)
            owner = _model_at(model, parent)
            if owner is not None:
                matches = difflib.get_close_matches(key, list(owner.model_fields), n=1)
                if matches:
                    line += " " + ErrorMessages.CONFIG_KEY_SUGGESTION.format(suggestion=matches[0])
            lines.append(line)
        else:
            # model_validator 错误的 loc 为空或止于模型本身
            lines.append(f"{_dotted(loc)}: {item['msg']}")
    return lines


def parse_scenario(raw: Any, source: str = "<memory>") -> Scenario:
    if not isinstance(raw, dict):
        raise ConfigurationError(ErrorMessages.CONFIG_TOP_LEVEL.format(path=source))
    try:
        return Scenario.model_validate(raw)
    except ValidationError as ve:
        details = "; ".join(describe_errors(ve))
        logger.error(f"Scenario validation failed for '{source}': {details}")
        raise ConfigurationError(ErrorMessages.CONFIG_INVALID.format(path=source, details=details)) from ve


def read_yaml(path: Union[str, Path]) -> Any:
    config_path = Path(path)
    if not config_path.is_file():
        logger.error(f"Scenario file not found: {config_path}")
        raise ConfigurationError(ErrorMessages.CONFIG_NOT_FOUND.format(path=config_path))

    yaml = YAML(typ='safe')
    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            return yaml.load(f)
    except MarkedYAMLError as e:
        mark = e.problem_mark
        line, column = (mark.line + 1, mark.column + 1) if mark is not None else ("?", "?")
        logger.error(f"Scenario YAML parsing error in {config_path}: {e}")
        raise ConfigurationError(ErrorMessages.CONFIG_PARSE.format(line=line, column=column, problem=e.problem)) from e
    except YAMLError as e:
        logger.error(f"Scenario YAML parsing error in {config_path}: {e}")
        raise ConfigurationError(ErrorMessages.CONFIG_PARSE.format(line="?", column="?", problem=e)) from e


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Load and strictly validate a scenario file (unknown keys are rejected)."""
    logger.info(f"Attempting to load scenario from '{path}'...")
    scenario = parse_scenario(read_yaml(path), str(path))
    logger.success(f"Successfully loaded scenario '{scenario.name}' (n = {scenario.grid.n_points}, t_end = {scenario.t_end})")
    return scenario


def scenario_overrides(scenario: Scenario, updates: Dict[str, Any]) -> Scenario:
    """A validated copy with dotted-path overrides, e.g. {"params.omega": 0.5}."""
    data = scenario.model_dump()
    for dotted, value in updates.items():
        target = data
        *parents, leaf = dotted.split(".")
        for part in parents:
            target = target[part]
        target[leaf] = value
    return parse_scenario(data, f"{scenario.name} (overrides)")
