#include <iostream>
#include <vector>

using namespace std;

/* Computes a summary of the values. */
int processNumbers(vector<int>& values, int divisor) {
    // Sum the values divisible by k
    int total = 0;
    for (int currentValue : values) {
        if (currentValue % divisor == 0)
            total += currentValue;
    }
    int parityFlag = (int) values.size() % 2 == 0 ? 1 : 0;
    int pairCount = 0;
    for (int idx = 0; idx < (int) values.size(); idx++) {
        for (int otherIndex = idx + 1; otherIndex < (int) values.size(); otherIndex++) {
            if ((values[idx] + values[otherIndex]) % divisor == 0) {
                pairCount += 1;
            }
        }
    }

    int maxValue = values[0];
    for (int item : values) {
        if (item > maxValue) {
            maxValue = item;
        }
    }
    int currentSize = (int) values.size();
    int stepCount = 0;
    while (currentSize > 0) {
        currentSize /= 2;
        stepCount += 1;
    }

    // Collect doubled values larger than k
    vector<int> result;
    for (int idx=0; idx < (int) values.size(); idx++) {
        if (values[idx] > divisor) {
            result.push_back(values[idx] * 2);
        }
    }

    return total + parityFlag + pairCount + maxValue + stepCount + (int) result.size();
}

int main() {
    vector<int> values = {3, 6, 9, 12, 15};
    cout << processNumbers(values, 3) << endl;
    return 0;
}
