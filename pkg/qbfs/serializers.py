from rest_framework import serializers

from circuits.serializers import StatsSerializer


class BudgetSerializer(serializers.Serializer):
    max_width = serializers.IntegerField(required=False, allow_null=True)
    max_gates = serializers.IntegerField(required=False, allow_null=True)

    def validate_max_width(self, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise serializers.ValidationError("width ceiling must be at least 1")

        return value

    def validate_max_gates(self, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise serializers.ValidationError("gate ceiling must be at least 1")

        return value


class QbfStatsSerializer(StatsSerializer):
    width = serializers.IntegerField(required=False)
    gates = serializers.IntegerField(required=False)
    vtree_nodes = serializers.IntegerField(required=False)
    engine = serializers.CharField()
    stage_names = serializers.ListField(child=serializers.CharField(), required=False)
    stage_gates = serializers.ListField(child=serializers.IntegerField(), required=False)
    width_bounds = serializers.ListField(
        child=serializers.IntegerField(allow_null=True), required=False
    )
    truth = serializers.BooleanField(required=False, allow_null=True)
    model_count = serializers.IntegerField(required=False, allow_null=True)


def validated_budgets(options: dict) -> dict:
    """Budget flags of a command, checked; raises ``ValidationError``."""
    serializer = BudgetSerializer(
        data={"max_width": options.get("max_width"), "max_gates": options.get("max_gates")}
    )
    serializer.is_valid(raise_exception=True)

    return serializer.validated_data
