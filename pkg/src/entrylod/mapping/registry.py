"""The closed set of ontology terms the mapper may emit.

Builders look terms up with ``T("crm:P2_has_type")``; a typo or an
unregistered term raises KeyError instead of leaking a made-up IRI into
the output.
"""

from ..rdf.namespaces import DEFAULT

CLASSES = """
fentry:FEntry fentry:Photograph fentry:Shot
oaentry:OAEntry oaentry:ArtisticRole oaentry:CataloguingRole
oaentry:Cartoon oaentry:Copy oaentry:Derivation oaentry:Drawing
fabio:EntityMetadata fabio:ArtisticWork fabio:StillImage fabio:AnalogManifestation
fabio:DigitalManifestation fabio:AnalogItem fabio:DigitalItem fabio:MetadataDocument
fabio:Work fabio:WorkCollection fabio:Expression
pro:RoleInTime pro:Role
hico:InterpretationAct hico:InterpretationType hico:InterpretationCriterion
prov:Influence foaf:Agent
crm:E3_Condition_State crm:E4_Period crm:E5_Event crm:E8_Acquisition crm:E9_Move
crm:E10_Transfer_of_Custody crm:E13_Attribute_Assignment crm:E14_Condition_Assessment
crm:E16_Measurement crm:E21_Person crm:E22_Man-Made_Object crm:E26_Physical_Feature
crm:E28_Conceptual_Object crm:E31_Document crm:E35_Title crm:E39_Actor crm:E41_Appellation
crm:E42_Identifier crm:E45_Address crm:E52_Time-Span crm:E53_Place crm:E54_Dimension
crm:E55_Type crm:E57_Material crm:E58_Measurement_Unit crm:E65_Creation crm:E67_Birth
crm:E69_Death crm:E74_Group crm:E90_Symbolic_Object
"""

PROPERTIES = """
fentry:describes
oaentry:describes oaentry:hasFormerWork oaentry:hasConceived oaentry:isConveivedByMeansOf
fabio:hasPortrayal fabio:hasManifestation
frbr:realization frbr:realizationOf frbr:embodiment frbr:embodimentOf frbr:exemplar
frbr:exemplarOf frbr:subject
pro:holdsRoleInTime pro:withRole pro:relatesTo pro:isHeldBy tv:atTime
hico:hasInterpretationType hico:hasInterpretationCriterion hico:isExtractedFrom
cito:citesAsEvidence
prov:wasGeneratedBy prov:wasAssociatedWith prov:entity
rdf:type rdfs:label rdfs:comment rdfs:seeAlso
crm:P1_is_identified_by crm:P2_has_type crm:P3_has_note crm:P4_has_time_span
crm:P7_took_place_at crm:P10_falls_within crm:P12_occurred_in_the_presence_of
crm:P12i_was_present_at crm:P14_carried_out_by crm:P22_transferred_title_to
crm:P22i_acquired_title_through crm:P24_transferred_title_of crm:P25_moved
crm:P26_moved_to crm:P27_moved_from crm:P28_custody_surrendered_by
crm:P29_custody_received_by crm:P30_transferred_custody_of
crm:P30i_custody_transferred_through crm:P34i_was_assessed_by crm:P35_has_identified
crm:P39i_was_measured_by crm:P40_observed_dimension crm:P45_consists_of
crm:P46i_forms_part_of crm:P50_has_current_keeper crm:P52_has_current_owner
crm:P55_has_current_location crm:P56_bears_feature crm:P57_has_number_of_parts
crm:P62_depicts crm:P67_refers_to crm:P70_documents crm:P70i_is_documented_in
crm:P74_has_current_or_former_residence crm:P76_has_contact_point
crm:P82a_begin_of_the_begin crm:P82b_end_of_the_end crm:P89_falls_within
crm:P90_has_value crm:P91_has_unit crm:P94_has_created crm:P94i_was_created_by
crm:P98i_was_born crm:P100i_died_in crm:P102_has_title crm:P106_is_composed_of
crm:P106i_forms_part_of crm:P107i_is_current_or_former_member_of
crm:P140_assigned_attribute_to crm:P140i_was_attributed_by crm:P141_assigned
"""

INDIVIDUALS = """
oaentry:influence-between-works-attribution
oaentry:cataloguer oaentry:cataloguing-institution oaentry:cataloguing-supervisor
oaentry:competent-institution oaentry:antiquarian oaentry:architect oaentry:art-dealer
pro:publisher scor:photographer
"""

# rdf:type of the individual roles, so every emitted role says which family it is in
ROLE_FAMILY = {
    "oaentry:cataloguer": "oaentry:CataloguingRole",
    "oaentry:cataloguing-institution": "oaentry:CataloguingRole",
    "oaentry:cataloguing-supervisor": "oaentry:CataloguingRole",
    "oaentry:competent-institution": "oaentry:CataloguingRole",
    "oaentry:antiquarian": "oaentry:ArtisticRole",
    "oaentry:architect": "oaentry:ArtisticRole",
    "oaentry:art-dealer": "oaentry:ArtisticRole",
    "pro:publisher": "pro:Role",
    "scor:photographer": "pro:Role",
}

INFLUENCE_KINDS = ("oaentry:Cartoon", "oaentry:Copy", "oaentry:Derivation", "oaentry:Drawing")

# range class given to "typed-term" objects of these predicates
RANGES = {
    "crm:P2_has_type": "crm:E55_Type",
    "crm:P45_consists_of": "crm:E57_Material",
    "crm:P56_bears_feature": "crm:E26_Physical_Feature",
    "crm:P91_has_unit": "crm:E58_Measurement_Unit",
    "crm:P7_took_place_at": "crm:E53_Place",
    "crm:P55_has_current_location": "crm:E53_Place",
}


class TermRegistry:
    """Closed curie -> Iri map, resolved against a prefix map."""

    def __init__(self, curies, prefixes=DEFAULT):
        self.prefixes = prefixes
        self._terms = {}
        for c in curies:
            self._terms[c] = prefixes.expand(c)

    def __getitem__(self, curie):
        try:
            return self._terms[curie]
        except KeyError:
            raise KeyError("term %r is not in the registry" % curie) from None

    def __contains__(self, curie):
        return curie in self._terms

    def __iter__(self):
        return iter(sorted(self._terms))

    def __len__(self):
        return len(self._terms)

    def iris(self):
        return set(self._terms.values())


def _words(block):
    return block.split()


REGISTRY = TermRegistry(_words(CLASSES) + _words(PROPERTIES) + _words(INDIVIDUALS))
T = REGISTRY.__getitem__
